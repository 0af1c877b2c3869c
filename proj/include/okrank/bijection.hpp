#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "okrank/partition.hpp"

namespace okrank {

/// (gamma, delta, alpha, beta) with gamma the staircase (N, N-1, ..., 1),
/// delta distinct values in [0, N-1], and alpha, beta partitions with parts <= N.
struct VectorPartition {
    int gamma_len = 0;
    std::vector<int> delta; // strictly decreasing
    Partition alpha;
    Partition beta;

    /// Throws ValidationError when a structural invariant fails.
    void validate() const;
    int weight() const;

    friend bool operator==(const VectorPartition&, const VectorPartition&) = default;
};

/// {"gamma_len": N, "delta": [...], "alpha": [...], "beta": [...]}
nlohmann::json to_json(const VectorPartition& v);
VectorPartition vector_partition_from_json(const nlohmann::json& j);

/// Builds the overpartition: add the staircase to the zero-padded conjugate
/// of alpha, overline everything, fold each delta value s into part s+1
/// (dropping its overline), re-sort and append beta.
Overpartition vector_to_over(const VectorPartition& v);

/// Inverse of vector_to_over.
VectorPartition over_to_vector(const Overpartition& o);

/// s_{k-2}(alpha) - t_{k-2}(beta) on over_to_vector(o), for k >= 2.
int kbar_rank(const Overpartition& o, int k);
int kbar_rank(const VectorPartition& v, int k);

/// Swaps the alpha parts <= n_{k-2}(beta) with the beta parts below the
/// (k-2)-th Durfee square of beta.
VectorPartition k_conjugate(const VectorPartition& v, int k);

/// Overpartition image of k-conjugation.
Overpartition k_conjugate(const Overpartition& o, int k);

bool is_self_k_conjugate(const Overpartition& o, int k);

} // namespace okrank
