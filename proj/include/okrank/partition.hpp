#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "okrank/errors.hpp"

namespace okrank {

/// Integer partition with weakly decreasing positive parts.
class Partition {
public:
    Partition() = default;

    /// Validates that parts are positive and non-increasing.
    explicit Partition(std::vector<int> parts);

    /// Sorts the parts first; zeros are dropped.
    static Partition from_unsorted(std::vector<int> parts);

    const std::vector<int>& parts() const { return parts_; }
    int length() const { return static_cast<int>(parts_.size()); }
    int largest() const { return parts_.empty() ? 0 : parts_.front(); }
    int weight() const;
    bool empty() const { return parts_.empty(); }

    friend bool operator==(const Partition&, const Partition&) = default;
    friend auto operator<=>(const Partition&, const Partition&) = default;

private:
    std::vector<int> parts_;
};

struct OverPart {
    int value = 0;
    bool overlined = false;

    friend bool operator==(const OverPart&, const OverPart&) = default;
};

/// Overpartition: weakly decreasing values, at most one overlined copy per
/// value. Canonical order lists the overlined copy before plain copies of
/// the same value.
class Overpartition {
public:
    Overpartition() = default;

    /// Validates canonical order and the one-overline-per-value rule.
    explicit Overpartition(std::vector<OverPart> parts);

    /// Puts parts into canonical order, then validates.
    static Overpartition from_unsorted(std::vector<OverPart> parts);

    /// Plain partition viewed as an overpartition with no overlines.
    static Overpartition from_partition(const Partition& p);

    const std::vector<OverPart>& parts() const { return parts_; }
    int length() const { return static_cast<int>(parts_.size()); }
    int largest() const { return parts_.empty() ? 0 : parts_.front().value; }
    int weight() const;
    int overline_count() const;
    bool empty() const { return parts_.empty(); }

    /// The underlying partition with overlines dropped.
    Partition values() const;

    friend bool operator==(const Overpartition&, const Overpartition&) = default;

private:
    std::vector<OverPart> parts_;
};

/// "13,10,9,7o,6" style text; a trailing 'o' marks an overlined part.
Overpartition parse_overpartition(std::string_view text);
Partition parse_partition(std::string_view text);
std::string format(const Overpartition& o);
std::string format(const Partition& p);

/// Every partition of n, in reverse lexicographic order.
std::vector<Partition> enumerate_partitions(int n);

/// Every overpartition of n, deterministic order.
std::vector<Overpartition> enumerate_overpartitions(int n);

Partition conjugate(const Partition& p);

/// Sizes n_1 >= ... >= n_depth of the successive Durfee squares, zero-padded.
std::vector<int> durfee_sizes(const Partition& p, int depth);

struct BelowDurfee {
    int count = 0;
    Partition residual;
};

/// Parts lying strictly below the depth-th successive Durfee square. Depth 0
/// stands for an infinite square at the top, so every part counts.
BelowDurfee parts_below_durfee(const Partition& p, int depth);

/// Largest N with (#overlined parts) + (#plain parts >= N) >= N.
int generalized_durfee(const Overpartition& o);

enum class RankStat { dyson, crank, d_rank, k_rank };

int dyson_rank(const Partition& p);
int crank(const Partition& p);
int d_rank(const Overpartition& o);

/// Garvan's k-rank for k >= 2: columns right of the first Durfee square of
/// length <= n_{k-1}, minus parts below the (k-1)-th Durfee square.
int k_rank(const Partition& p, int k);

/// Dispatches on stat; d_rank uses the overpartition, the others its values.
int rank_stat(const Overpartition& o, RankStat stat, int k = 2);

} // namespace okrank
