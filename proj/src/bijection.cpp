#include "okrank/bijection.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace okrank {

void VectorPartition::validate() const
{
    if (gamma_len < 0) {
        throw ValidationError("gamma length must be non-negative");
    }
    if (static_cast<int>(delta.size()) > gamma_len) {
        throw ValidationError("delta has more parts than gamma");
    }
    for (std::size_t i = 0; i < delta.size(); ++i) {
        if (delta[i] < 0 || delta[i] >= gamma_len) {
            throw ValidationError("delta part " + std::to_string(delta[i]) + " outside [0, " +
                                  std::to_string(gamma_len - 1) + "]");
        }
        if (i > 0 && delta[i] >= delta[i - 1]) {
            throw ValidationError("delta must be strictly decreasing");
        }
    }
    if (alpha.largest() > gamma_len) {
        throw ValidationError("alpha has a part larger than gamma length");
    }
    if (beta.largest() > gamma_len) {
        throw ValidationError("beta has a part larger than gamma length");
    }
}

int VectorPartition::weight() const
{
    return gamma_len * (gamma_len + 1) / 2 + std::accumulate(delta.begin(), delta.end(), 0) + alpha.weight() +
           beta.weight();
}

nlohmann::json to_json(const VectorPartition& v)
{
    return {{"gamma_len", v.gamma_len}, {"delta", v.delta}, {"alpha", v.alpha.parts()}, {"beta", v.beta.parts()}};
}

VectorPartition vector_partition_from_json(const nlohmann::json& j)
{
    try {
        VectorPartition v;
        v.gamma_len = j.at("gamma_len").get<int>();
        v.delta = j.at("delta").get<std::vector<int>>();
        v.alpha = Partition(j.at("alpha").get<std::vector<int>>());
        v.beta = Partition(j.at("beta").get<std::vector<int>>());
        v.validate();
        return v;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed vector partition JSON: ") + e.what());
    }
}

Overpartition vector_to_over(const VectorPartition& v)
{
    v.validate();
    const int n = v.gamma_len;
    std::vector<int> padded = conjugate(v.alpha).parts();
    padded.resize(n, 0);

    std::vector<OverPart> sigma(n);
    for (int i = 0; i < n; ++i) {
        sigma[i] = {padded[i] + n - i, true};
    }
    // delta folds into the original positions before any re-sorting
    for (int s : v.delta) {
        sigma[s].value += s;
        sigma[s].overlined = false;
    }
    for (int b : v.beta.parts()) {
        sigma.push_back({b, false});
    }
    return Overpartition::from_unsorted(std::move(sigma));
}

VectorPartition over_to_vector(const Overpartition& o)
{
    const int j = o.overline_count();
    const int n = generalized_durfee(o);

    std::vector<int> sigma; // overlined values, descending
    std::vector<int> plain; // non-overlined values, descending
    for (const auto& p : o.parts()) {
        (p.overlined ? sigma : plain).push_back(p.value);
    }
    // reindexed so lambda_{j+1..} are the plain parts; mu is lambda_{j+1..N}
    auto lambda = [&](int t) { return plain[t - j - 1]; };

    std::vector<int> delta;
    for (int t = n; t >= j + 1; --t) {
        const int base = lambda(t) - t + j + 1;
        int s = static_cast<int>(sigma.size());
        while (s >= 1 && !(base - s < sigma[s - 1])) {
            --s;
        }
        sigma.insert(sigma.begin() + s, base - s);
        delta.push_back(t + s - j - 1);
    }
    std::sort(delta.begin(), delta.end(), std::greater<>());

    std::vector<int> eta(n);
    for (int i = 0; i < n; ++i) {
        eta[i] = sigma[i] + i - n;
    }
    VectorPartition v;
    v.gamma_len = n;
    v.delta = std::move(delta);
    v.alpha = conjugate(Partition::from_unsorted(std::move(eta)));
    v.beta = Partition(std::vector<int>(plain.begin() + (n - j), plain.end()));
    return v;
}

namespace {

// n_{k-2}(beta), with the depth-0 square infinitely large.
int rank_square(const Partition& beta, int k)
{
    if (k == 2) {
        return std::numeric_limits<int>::max();
    }
    return durfee_sizes(beta, k - 2).back();
}

} // namespace

int kbar_rank(const VectorPartition& v, int k)
{
    if (k < 2) {
        throw DomainError("kbar-rank needs k >= 2");
    }
    const int limit = rank_square(v.beta, k);
    const int s = static_cast<int>(
        std::count_if(v.alpha.parts().begin(), v.alpha.parts().end(), [limit](int p) { return p <= limit; }));
    return s - parts_below_durfee(v.beta, k - 2).count;
}

int kbar_rank(const Overpartition& o, int k) { return kbar_rank(over_to_vector(o), k); }

VectorPartition k_conjugate(const VectorPartition& v, int k)
{
    if (k < 2) {
        throw DomainError("k-conjugation needs k >= 2");
    }
    v.validate();
    const int limit = rank_square(v.beta, k);
    const auto below = parts_below_durfee(v.beta, k - 2);

    std::vector<int> alpha_keep;
    std::vector<int> alpha_moved;
    for (int p : v.alpha.parts()) {
        (p <= limit ? alpha_moved : alpha_keep).push_back(p);
    }
    std::vector<int> beta_head(v.beta.parts().begin(), v.beta.parts().end() - below.count);

    VectorPartition out;
    out.gamma_len = v.gamma_len;
    out.delta = v.delta;
    alpha_keep.insert(alpha_keep.end(), below.residual.parts().begin(), below.residual.parts().end());
    beta_head.insert(beta_head.end(), alpha_moved.begin(), alpha_moved.end());
    out.alpha = Partition::from_unsorted(std::move(alpha_keep));
    out.beta = Partition::from_unsorted(std::move(beta_head));
    out.validate();
    if (k > 2 && durfee_sizes(out.beta, k - 2) != durfee_sizes(v.beta, k - 2)) {
        throw ValidationError("k-conjugation changed the leading Durfee squares of beta");
    }
    return out;
}

Overpartition k_conjugate(const Overpartition& o, int k) { return vector_to_over(k_conjugate(over_to_vector(o), k)); }

bool is_self_k_conjugate(const Overpartition& o, int k)
{
    const auto v = over_to_vector(o);
    return k_conjugate(v, k) == v;
}

} // namespace okrank
