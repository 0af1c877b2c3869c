#include "okrank/counting.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "okrank/bijection.hpp"
#include "okrank/partition.hpp"

namespace okrank {

std::string to_string(Stat s)
{
    switch (s) {
    case Stat::N:
        return "n";
    case Stat::M:
        return "m";
    case Stat::Nk:
        return "nk";
    case Stat::Nbar:
        return "nbar";
    case Stat::Nbark:
        return "nbark";
    }
    return "?";
}

std::string to_string(Method m)
{
    switch (m) {
    case Method::gf:
        return "gf";
    case Method::multisum:
        return "multisum";
    case Method::enumeration:
        return "enum";
    }
    return "?";
}

Stat parse_stat(std::string_view s)
{
    for (Stat st : {Stat::N, Stat::M, Stat::Nk, Stat::Nbar, Stat::Nbark}) {
        if (to_string(st) == s) {
            return st;
        }
    }
    throw UsageError("unknown statistic '" + std::string(s) + "'");
}

Method parse_method(std::string_view s)
{
    for (Method m : {Method::gf, Method::multisum, Method::enumeration}) {
        if (to_string(m) == s) {
            return m;
        }
    }
    throw UsageError("unknown method '" + std::string(s) + "'");
}

std::int64_t RankTable::at(int n, int m, int j) const
{
    auto it = entries.find({n, m, j});
    return it == entries.end() ? 0 : it->second;
}

std::int64_t RankTable::weight_total(int n) const
{
    std::int64_t total = 0;
    for (auto it = entries.lower_bound({n, -1000000, -1000000}); it != entries.end() && it->first.n == n; ++it) {
        total += it->second;
    }
    return total;
}

namespace {

std::int64_t to_count(const Integer& v)
{
    if (!v.fits_slong_p()) {
        throw DomainError("table entry " + v.get_str() + " overflows 64 bits");
    }
    return v.get_si();
}

Series<Integer> inverse_euler(int trunc) { return poch_inf<Integer>(qmono(1, 1), 1, trunc).inverse(); }

// (1/(q;q)_inf) sum_{n>=1} (-1)^{n-1} q^{exponent(n) + |m| n} (1 - q^n)
template <class Exponent>
Series<Integer> alternating_rank_gf(Exponent exponent, int m, int trunc)
{
    const int am = std::abs(m);
    Series<Integer> sum = Series<Integer>::zero(trunc);
    for (int n = 1;; ++n) {
        const int e = exponent(n) + am * n;
        if (e > trunc) {
            break;
        }
        Integer sign = (n % 2 == 1) ? 1 : -1;
        sum += Series<Integer>::monomial(sign, e, trunc).mul_binomial(Integer(-1), n).truncated(trunc);
    }
    return (sum * inverse_euler(trunc)).truncated(trunc);
}

} // namespace

Series<Integer> dyson_gf(int m, int trunc)
{
    return alternating_rank_gf([](int n) { return n * (3 * n - 1) / 2; }, m, trunc);
}

Series<Integer> crank_gf(int m, int trunc)
{
    return alternating_rank_gf([](int n) { return n * (n - 1) / 2; }, m, trunc);
}

Series<Integer> garvan_nk_gf(int k, int m, int trunc)
{
    if (k < 1) {
        throw DomainError("N_k needs k >= 1");
    }
    return alternating_rank_gf([k](int n) { return n * ((2 * k - 1) * n - 1) / 2; }, m, trunc);
}

Series<Integer> nbar_gf(int m, int trunc)
{
    const int am = std::abs(m);
    Series<Integer> sum = Series<Integer>::zero(trunc);
    for (int n = 1; n * n + am * n <= trunc; ++n) {
        Integer sign = (n % 2 == 1) ? 1 : -1;
        sum += Series<Integer>::monomial(sign, n * n + am * n, trunc)
                   .mul_binomial(Integer(-1), n)
                   .truncated(trunc)
                   .div_binomial(Integer(1), n);
    }
    Series<Integer> pre = poch_inf<Integer>(qmono(-1, 1), 1, trunc) * inverse_euler(trunc);
    return (sum * pre).scaled(Integer(2)).truncated(trunc);
}

Series<ZPoly> overpartition_prefactor(int trunc)
{
    return (poch_inf<ZPoly>(qmono(-1, 1, 1), 1, trunc) * convert_series<ZPoly>(inverse_euler(trunc))).truncated(trunc);
}

Series<ZPoly> nbark_inner_term(int k, int n, int trunc)
{
    const int e = (k - 1) * n * n;
    const Series<ZPoly> ratio = poch_ratio<ZPoly>(qmono(-1, 0, -1), qmono(-1, 1, 1), n, trunc - e);
    const ZPoly coeff = ZPoly::monomial(Integer(n % 2 == 1 ? 1 : -1), MarkerExp{0, n});
    return ratio.scaled(coeff).shifted(e).mul_binomial(ZPoly(-1), n).truncated(trunc);
}

std::vector<Series<ZPoly>> nbark_gf_all(int k, int trunc)
{
    if (k < 2) {
        throw DomainError("Nbar_k needs k >= 2");
    }
    std::vector<Series<ZPoly>> inner;
    for (int n = 1; (k - 1) * n * n <= trunc; ++n) {
        inner.push_back(nbark_inner_term(k, n, trunc));
    }
    const Series<ZPoly> pre = overpartition_prefactor(trunc);
    std::vector<Series<ZPoly>> out;
    out.reserve(trunc + 1);
    for (int m = 0; m <= trunc; ++m) {
        Series<ZPoly> sum = Series<ZPoly>::zero(trunc);
        for (std::size_t i = 0; i < inner.size(); ++i) {
            const int n = static_cast<int>(i) + 1;
            if (inner[i].valuation() + m * n <= trunc) {
                sum += inner[i].shifted(m * n).truncated(trunc);
            }
        }
        out.push_back((sum * pre).truncated(trunc));
    }
    return out;
}

Series<ZPoly> nbark_gf(int k, int m, int trunc)
{
    if (k < 2) {
        throw DomainError("Nbar_k needs k >= 2");
    }
    const int am = std::abs(m);
    Series<ZPoly> sum = Series<ZPoly>::zero(trunc);
    for (int n = 1; (k - 1) * n * n + am * n <= trunc; ++n) {
        sum += nbark_inner_term(k, n, trunc).shifted(am * n).truncated(trunc);
    }
    return (sum * overpartition_prefactor(trunc)).truncated(trunc);
}

Series<ZPoly> successive_durfee_multisum(const MultisumSpec& spec, int trunc)
{
    if (spec.depth < 1) {
        throw DomainError("multisum depth must be >= 1");
    }
    const auto linear = [&](int level) { return spec.linear_from > 0 && level >= spec.linear_from ? 1 : 0; };
    int top = 0;
    while ((top + 1) * (top + 2) / 2 <= trunc) {
        ++top;
    }
    // level 1: a^{n1} (-1/a;q)_{n1} q^{(n1+1 choose 2) + linear n1}
    std::vector<std::optional<Series<ZPoly>>> level(top + 1);
    for (int n1 = 0; n1 <= top; ++n1) {
        const int e = n1 * (n1 + 1) / 2 + linear(1) * n1;
        if (e > trunc) {
            continue;
        }
        level[n1] = poch_finite<ZPoly>(qmono(-1, 0, -1), n1, trunc - e)
                        .scaled(ZPoly::monomial(Integer(1), MarkerExp{0, n1}))
                        .shifted(e);
    }
    for (int r = 2; r <= spec.depth; ++r) {
        std::vector<std::optional<Series<ZPoly>>> next(top + 1);
        for (int n = 0; n <= top; ++n) {
            const int e = n * n + linear(r) * n;
            Series<ZPoly> acc = Series<ZPoly>::zero(trunc);
            bool any = false;
            for (int m = n; m <= top; ++m) {
                if (!level[m] || level[m]->valuation() + e > trunc) {
                    continue;
                }
                Series<ZPoly> t = level[m]->shifted(e).truncated(trunc);
                for (int i = 1; i <= m - n; ++i) {
                    t = t.div_binomial(ZPoly(-1), i);
                }
                acc += t;
                any = true;
            }
            if (any) {
                next[n] = std::move(acc);
            }
        }
        level = std::move(next);
    }
    const ZPoly minus_z = ZPoly::monomial(Integer(-1), MarkerExp{1, 0});
    const ZPoly minus_zinv = ZPoly::monomial(Integer(-1), MarkerExp{-1, 0});
    Series<ZPoly> total = Series<ZPoly>::zero(trunc);
    for (int n = std::max(spec.lower, 0); n <= top; ++n) {
        if (!level[n]) {
            continue;
        }
        Series<ZPoly> t = *level[n];
        for (int i = 1; i <= n; ++i) {
            switch (spec.last) {
            case LastFactor::zpair:
                t = t.div_binomial(minus_z, i).div_binomial(minus_zinv, i);
                break;
            case LastFactor::qsquared:
                t = t.div_binomial(ZPoly(-1), 2 * i);
                break;
            case LastFactor::q:
                t = t.div_binomial(ZPoly(-1), i);
                break;
            }
        }
        total += t;
    }
    return total.truncated(trunc);
}

Series<ZPoly> overpartition_bilateral(const QuadraticBound& exponent, int trunc)
{
    auto term = [&](int n, int t) {
        const int e = static_cast<int>(exponent.at(n));
        if (e > t) {
            return Series<ZPoly>::zero(t);
        }
        const ZPoly coeff = ZPoly::monomial(Integer(n % 2 == 0 ? 1 : -1), MarkerExp{0, n});
        return poch_ratio<ZPoly>(qmono(-1, 0, -1), qmono(-1, 1, 1), n, t - e).scaled(coeff).shifted(e);
    };
    // (-1/a;q)_n/(-aq;q)_n has non-negative valuation for every n
    Series<ZPoly> sum = certified_sum<ZPoly>(exponent, trunc, term);
    return (sum * overpartition_prefactor(trunc)).truncated(trunc);
}

Series<ZPoly> self_conjugate_series(int k, Side side, int trunc)
{
    if (k < 2) {
        throw DomainError("self-k-conjugate series needs k >= 2");
    }
    if (side == Side::lhs) {
        return successive_durfee_multisum({k - 1, LastFactor::qsquared, 0, 0}, trunc);
    }
    // (k-1) n^2 + (n+1 choose 2) = ((2k-1) n^2 + n) / 2
    return overpartition_bilateral(QuadraticBound{2LL * k - 1, 1, 0}, trunc);
}

namespace {

void check_range(int max_n)
{
    if (max_n < 1) {
        throw UsageError("max_n must be >= 1");
    }
}

void add_entry(RankTable& t, int n, int m, int j, std::int64_t count)
{
    if (count != 0) {
        t.entries[{n, m, j}] += count;
    }
}

template <class Gf>
void fill_from_scalar_gf(RankTable& t, Gf gf)
{
    for (int m = 0; m <= t.max_n; ++m) {
        const Series<Integer> s = gf(m);
        for (int n = 1; n <= t.max_n; ++n) {
            const std::int64_t c = to_count(s.coeff(n));
            add_entry(t, n, m, 0, c);
            if (m != 0) {
                add_entry(t, n, -m, 0, c);
            }
        }
    }
}

RankTable gf_table(Stat stat, int max_n, int k)
{
    RankTable t{stat, Method::gf, k, max_n, {}};
    switch (stat) {
    case Stat::N:
        fill_from_scalar_gf(t, [&](int m) { return dyson_gf(m, max_n); });
        break;
    case Stat::M:
        fill_from_scalar_gf(t, [&](int m) { return crank_gf(m, max_n); });
        break;
    case Stat::Nk:
        if (k < 1) {
            throw UsageError("nk gf needs k >= 1");
        }
        fill_from_scalar_gf(t, [&](int m) { return garvan_nk_gf(k, m, max_n); });
        break;
    case Stat::Nbar:
        fill_from_scalar_gf(t, [&](int m) { return nbar_gf(m, max_n); });
        break;
    case Stat::Nbark: {
        if (k < 2) {
            throw UsageError("nbark needs k >= 2");
        }
        const auto all = nbark_gf_all(k, max_n);
        for (int m = 0; m <= max_n; ++m) {
            for (int n = 1; n <= max_n; ++n) {
                const ZPoly poly = all[m].coeff(n);
                for (const auto& [e, c] : poly.terms()) {
                    add_entry(t, n, m, e.a, to_count(c));
                    if (m != 0) {
                        add_entry(t, n, -m, e.a, to_count(c));
                    }
                }
            }
        }
        break;
    }
    }
    return t;
}

RankTable multisum_table(Stat stat, int max_n, int k)
{
    if (stat != Stat::Nbark) {
        throw UsageError("multisum route exists only for nbark");
    }
    if (k < 2) {
        throw UsageError("nbark needs k >= 2");
    }
    RankTable t{stat, Method::multisum, k, max_n, {}};
    const auto s = successive_durfee_multisum({k - 1, LastFactor::zpair, 1, 0}, max_n);
    for (int n = 1; n <= max_n; ++n) {
        const ZPoly poly = s.coeff(n);
        for (const auto& [e, c] : poly.terms()) {
            add_entry(t, n, e.z, e.a, to_count(c));
        }
    }
    return t;
}

RankTable enum_table(Stat stat, int max_n, int k)
{
    RankTable t{stat, Method::enumeration, k, max_n, {}};
    if ((stat == Stat::Nk || stat == Stat::Nbark) && k < 2) {
        throw UsageError(to_string(stat) + " enumeration needs k >= 2");
    }
    for (int n = 1; n <= max_n; ++n) {
        if (stat == Stat::N || stat == Stat::M || stat == Stat::Nk) {
            for (const auto& p : enumerate_partitions(n)) {
                if (stat == Stat::N) {
                    add_entry(t, n, dyson_rank(p), 0, 1);
                } else if (stat == Stat::M) {
                    add_entry(t, n, crank(p), 0, 1);
                } else if (durfee_sizes(p, k - 1).back() >= 1) {
                    add_entry(t, n, k_rank(p, k), 0, 1);
                }
            }
            continue;
        }
        for (const auto& o : enumerate_overpartitions(n)) {
            if (stat == Stat::Nbar) {
                add_entry(t, n, d_rank(o), 0, 1);
                continue;
            }
            const auto v = over_to_vector(o);
            if (k > 2 && durfee_sizes(v.beta, k - 2).back() < 1) {
                continue;
            }
            add_entry(t, n, kbar_rank(v, k), o.overline_count(), 1);
        }
    }
    return t;
}

} // namespace

RankTable rank_table(Stat stat, Method method, int max_n, int k)
{
    check_range(max_n);
    if (stat != Stat::Nk && stat != Stat::Nbark) {
        k = 0;
    }
    switch (method) {
    case Method::gf:
        return gf_table(stat, max_n, k);
    case Method::multisum:
        return multisum_table(stat, max_n, k);
    case Method::enumeration:
        return enum_table(stat, max_n, k);
    }
    throw UsageError("unknown method");
}

std::string to_tsv(const RankTable& t)
{
    std::ostringstream os;
    os << "n\tm\tj\tcount\n";
    for (const auto& [key, c] : t.entries) {
        os << key.n << '\t' << key.m << '\t' << key.j << '\t' << c << '\n';
    }
    return os.str();
}

nlohmann::json to_json(const RankTable& t)
{
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [key, c] : t.entries) {
        entries.push_back({key.n, key.m, key.j, c});
    }
    return {{"stat", to_string(t.stat)},
            {"method", to_string(t.method)},
            {"k", t.k},
            {"max_n", t.max_n},
            {"entries", std::move(entries)}};
}

RankTable rank_table_from_json(const nlohmann::json& j)
{
    RankTable t;
    t.stat = parse_stat(j.at("stat").get<std::string>());
    t.method = parse_method(j.at("method").get<std::string>());
    t.k = j.at("k").get<int>();
    t.max_n = j.at("max_n").get<int>();
    for (const auto& e : j.at("entries")) {
        t.entries[{e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>()}] = e.at(3).get<std::int64_t>();
    }
    return t;
}

ReductionReport reduction_check_a0(int k, int max_n)
{
    const RankTable over = rank_table(Stat::Nbark, Method::gf, max_n, k);
    const RankTable plain = rank_table(Stat::Nk, Method::gf, max_n, k);
    ReductionReport report{k, max_n, 0};
    for (int n = 1; n <= max_n; ++n) {
        for (int m = -n; m <= n; ++m) {
            if (over.at(n, m, 0) != plain.at(n, m)) {
                throw VerificationFailure("Nbar_" + std::to_string(k) + "(" + std::to_string(m) + "," +
                                          std::to_string(n) + ",0) = " + std::to_string(over.at(n, m, 0)) +
                                          " but N_" + std::to_string(k) + " gives " +
                                          std::to_string(plain.at(n, m)));
            }
            ++report.entries_checked;
        }
    }
    return report;
}

} // namespace okrank
