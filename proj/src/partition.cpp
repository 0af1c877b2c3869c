#include "okrank/partition.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace okrank {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts))
{
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] <= 0) {
            throw ValidationError("partition parts must be positive");
        }
        if (i > 0 && parts_[i] > parts_[i - 1]) {
            throw ValidationError("partition parts must be non-increasing");
        }
    }
}

Partition Partition::from_unsorted(std::vector<int> parts)
{
    std::erase(parts, 0);
    std::sort(parts.begin(), parts.end(), std::greater<>());
    return Partition(std::move(parts));
}

int Partition::weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

Overpartition::Overpartition(std::vector<OverPart> parts) : parts_(std::move(parts))
{
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        const auto& p = parts_[i];
        if (p.value <= 0) {
            throw ValidationError("overpartition parts must be positive");
        }
        if (i == 0) {
            continue;
        }
        const auto& prev = parts_[i - 1];
        if (p.value > prev.value) {
            throw ValidationError("overpartition parts must be non-increasing");
        }
        if (p.value == prev.value && p.overlined) {
            throw ValidationError(prev.overlined ? "value " + std::to_string(p.value) + " overlined twice"
                                                 : "overlined copy of " + std::to_string(p.value) +
                                                       " must come first");
        }
    }
}

Overpartition Overpartition::from_unsorted(std::vector<OverPart> parts)
{
    std::sort(parts.begin(), parts.end(), [](const OverPart& x, const OverPart& y) {
        if (x.value != y.value) {
            return x.value > y.value;
        }
        return x.overlined && !y.overlined;
    });
    return Overpartition(std::move(parts));
}

Overpartition Overpartition::from_partition(const Partition& p)
{
    std::vector<OverPart> parts;
    parts.reserve(p.parts().size());
    for (int v : p.parts()) {
        parts.push_back({v, false});
    }
    return Overpartition(std::move(parts));
}

int Overpartition::weight() const
{
    int w = 0;
    for (const auto& p : parts_) {
        w += p.value;
    }
    return w;
}

int Overpartition::overline_count() const
{
    return static_cast<int>(std::count_if(parts_.begin(), parts_.end(), [](const OverPart& p) { return p.overlined; }));
}

Partition Overpartition::values() const
{
    std::vector<int> v;
    v.reserve(parts_.size());
    for (const auto& p : parts_) {
        v.push_back(p.value);
    }
    return Partition(std::move(v));
}

namespace {

std::vector<std::string_view> split_commas(std::string_view text)
{
    std::vector<std::string_view> out;
    while (true) {
        auto pos = text.find(',');
        out.push_back(text.substr(0, pos));
        if (pos == std::string_view::npos) {
            break;
        }
        text.remove_prefix(pos + 1);
    }
    return out;
}

std::string_view strip(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
        s.remove_suffix(1);
    }
    return s;
}

int parse_positive(std::string_view tok)
{
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size() || v <= 0) {
        throw ValidationError("malformed part '" + std::string(tok) + "'");
    }
    return v;
}

} // namespace

Overpartition parse_overpartition(std::string_view text)
{
    text = strip(text);
    std::vector<OverPart> parts;
    if (text.empty()) {
        return Overpartition();
    }
    for (auto tok : split_commas(text)) {
        tok = strip(tok);
        bool over = false;
        if (!tok.empty() && tok.back() == 'o') {
            over = true;
            tok.remove_suffix(1);
        }
        parts.push_back({parse_positive(tok), over});
    }
    return Overpartition(std::move(parts));
}

Partition parse_partition(std::string_view text)
{
    text = strip(text);
    std::vector<int> parts;
    if (text.empty()) {
        return Partition();
    }
    for (auto tok : split_commas(text)) {
        parts.push_back(parse_positive(strip(tok)));
    }
    return Partition(std::move(parts));
}

std::string format(const Overpartition& o)
{
    std::string s;
    for (const auto& p : o.parts()) {
        if (!s.empty()) {
            s += ',';
        }
        s += std::to_string(p.value);
        if (p.overlined) {
            s += 'o';
        }
    }
    return s;
}

std::string format(const Partition& p)
{
    std::string s;
    for (int v : p.parts()) {
        if (!s.empty()) {
            s += ',';
        }
        s += std::to_string(v);
    }
    return s;
}

namespace {

void partitions_rec(int remaining, int max_part, std::vector<int>& current, std::vector<Partition>& out)
{
    if (remaining == 0) {
        out.emplace_back(current);
        return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
        current.push_back(part);
        partitions_rec(remaining - part, part, current, out);
        current.pop_back();
    }
}

} // namespace

std::vector<Partition> enumerate_partitions(int n)
{
    if (n < 0) {
        throw DomainError("enumerate_partitions needs n >= 0");
    }
    std::vector<Partition> out;
    std::vector<int> current;
    partitions_rec(n, n, current, out);
    return out;
}

std::vector<Overpartition> enumerate_overpartitions(int n)
{
    std::vector<Overpartition> out;
    for (const auto& p : enumerate_partitions(n)) {
        std::vector<int> distinct = p.parts();
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        const std::size_t d = distinct.size();
        // each subset of the distinct values gets its first copy overlined
        for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
            std::vector<OverPart> parts;
            parts.reserve(p.parts().size());
            std::size_t idx = 0;
            for (std::size_t i = 0; i < p.parts().size(); ++i) {
                int v = p.parts()[i];
                bool first = (i == 0 || p.parts()[i - 1] != v);
                if (first && i > 0) {
                    ++idx;
                }
                parts.push_back({v, first && ((mask >> idx) & 1U)});
            }
            out.emplace_back(std::move(parts));
        }
    }
    return out;
}

Partition conjugate(const Partition& p)
{
    std::vector<int> cols(p.largest(), 0);
    for (int v : p.parts()) {
        for (int c = 0; c < v; ++c) {
            ++cols[c];
        }
    }
    return Partition(std::move(cols));
}

namespace {

// Side of the Durfee square of parts[start..end).
int square_at(const std::vector<int>& parts, std::size_t start)
{
    int d = 0;
    while (start + d < parts.size() && parts[start + d] >= d + 1) {
        ++d;
    }
    return d;
}

} // namespace

std::vector<int> durfee_sizes(const Partition& p, int depth)
{
    if (depth < 1) {
        throw DomainError("durfee_sizes needs depth >= 1");
    }
    std::vector<int> sizes;
    sizes.reserve(depth);
    std::size_t row = 0;
    for (int i = 0; i < depth; ++i) {
        int d = square_at(p.parts(), row);
        sizes.push_back(d);
        row += d;
    }
    return sizes;
}

BelowDurfee parts_below_durfee(const Partition& p, int depth)
{
    if (depth < 0) {
        throw DomainError("parts_below_durfee needs depth >= 0");
    }
    std::size_t row = 0;
    for (int i = 0; i < depth; ++i) {
        int d = square_at(p.parts(), row);
        if (d == 0) {
            // fewer than depth squares: nothing lies below
            row = p.parts().size();
            break;
        }
        row += d;
    }
    std::vector<int> rest(p.parts().begin() + static_cast<std::ptrdiff_t>(row), p.parts().end());
    return {static_cast<int>(rest.size()), Partition(std::move(rest))};
}

int generalized_durfee(const Overpartition& o)
{
    const int over = o.overline_count();
    int best = 0;
    for (int n = 1; n <= o.length(); ++n) {
        int big = 0;
        for (const auto& p : o.parts()) {
            if (!p.overlined && p.value >= n) {
                ++big;
            }
        }
        if (over + big >= n) {
            best = n;
        } else {
            break;
        }
    }
    return best;
}

int dyson_rank(const Partition& p)
{
    if (p.empty()) {
        throw DomainError("rank of the empty partition is undefined");
    }
    return p.largest() - p.length();
}

int crank(const Partition& p)
{
    if (p.empty()) {
        throw DomainError("crank of the empty partition is undefined");
    }
    const int ones = static_cast<int>(std::count(p.parts().begin(), p.parts().end(), 1));
    if (ones == 0) {
        return p.largest();
    }
    const int bigger = static_cast<int>(
        std::count_if(p.parts().begin(), p.parts().end(), [ones](int v) { return v > ones; }));
    return bigger - ones;
}

int d_rank(const Overpartition& o)
{
    if (o.empty()) {
        throw DomainError("D-rank of the empty overpartition is undefined");
    }
    return o.largest() - o.length();
}

int k_rank(const Partition& p, int k)
{
    if (p.empty()) {
        throw DomainError("k-rank of the empty partition is undefined");
    }
    if (k < 2) {
        throw DomainError("k-rank needs k >= 2");
    }
    const auto sizes = durfee_sizes(p, k - 1);
    const int first = sizes.front();
    const int limit = sizes.back();
    const Partition cols = conjugate(p);
    int right = 0;
    for (int c = first; c < cols.length(); ++c) {
        if (cols.parts()[c] <= limit) {
            ++right;
        }
    }
    return right - parts_below_durfee(p, k - 1).count;
}

int rank_stat(const Overpartition& o, RankStat stat, int k)
{
    switch (stat) {
    case RankStat::dyson:
        return dyson_rank(o.values());
    case RankStat::crank:
        return crank(o.values());
    case RankStat::d_rank:
        return d_rank(o);
    case RankStat::k_rank:
        return k_rank(o.values(), k);
    }
    throw UsageError("unknown statistic");
}

} // namespace okrank
