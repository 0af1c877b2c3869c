#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "okrank/qobjects.hpp"
#include "okrank/series.hpp"

namespace okrank {

/// Counting symbols: N (Dyson rank), M (crank), N_k (Garvan k-rank),
/// Nbar (D-rank), Nbar_k (kbar-rank with overline count j).
enum class Stat { N, M, Nk, Nbar, Nbark };
enum class Method { gf, multisum, enumeration };

std::string to_string(Stat s);
std::string to_string(Method m);
Stat parse_stat(std::string_view s);
Method parse_method(std::string_view s);

struct TableKey {
    int n = 0;
    int m = 0;
    int j = 0;

    friend auto operator<=>(const TableKey&, const TableKey&) = default;
};

/// (n, m, j) -> count for 1 <= n <= max_n. Zero entries are not stored.
struct RankTable {
    Stat stat = Stat::N;
    Method method = Method::gf;
    int k = 0;
    int max_n = 0;
    std::map<TableKey, std::int64_t> entries;

    std::int64_t at(int n, int m, int j = 0) const;

    /// Sum over m and j at weight n.
    std::int64_t weight_total(int n) const;

    friend bool operator==(const RankTable&, const RankTable&) = default;
};

/// Builds a table by generating function, multisum or enumeration. Supported:
/// N {gf, enum}; M {gf, enum}; Nk {gf (k >= 1), enum (k >= 2)}; Nbar {gf, enum};
/// Nbark {gf, multisum, enum} (k >= 2). Anything else is a UsageError.
RankTable rank_table(Stat stat, Method method, int max_n, int k = 0);

std::string to_tsv(const RankTable& t);
nlohmann::json to_json(const RankTable& t);
RankTable rank_table_from_json(const nlohmann::json& j);

// Generating functions, one rank value m at a time.

/// sum_n N(m,n) q^n from Dyson's formula.
Series<Integer> dyson_gf(int m, int trunc);
/// sum_n M(m,n) q^n from the crank formula (carries M(0,1) = -1).
Series<Integer> crank_gf(int m, int trunc);
/// sum_n N_k(m,n) q^n, k >= 1.
Series<Integer> garvan_nk_gf(int k, int m, int trunc);
/// sum_n Nbar(m,n) q^n.
Series<Integer> nbar_gf(int m, int trunc);
/// sum_{n,j} Nbar_k(m,n,j) a^j q^n.
Series<ZPoly> nbark_gf(int k, int m, int trunc);
/// The same for every m in [0, trunc], sharing the prefactor and inner terms.
std::vector<Series<ZPoly>> nbark_gf_all(int k, int trunc);

/// (-1)^{n-1} a^n q^{(k-1)n^2} (1 - q^n) (-1/a;q)_n / (-aq;q)_n, the n-th
/// summand before the q^{|m| n} shift.
Series<ZPoly> nbark_inner_term(int k, int n, int trunc);

/// Product (-aq;q)_inf / (q;q)_inf.
Series<ZPoly> overpartition_prefactor(int trunc);

/// Final factor of a successive-Durfee multisum.
enum class LastFactor {
    zpair,     ///< 1 / ((zq;q)_n (z^{-1}q;q)_n)
    qsquared,  ///< 1 / (q^2;q^2)_n
    q,         ///< 1 / (q;q)_n
};

/// sum_{n_1 >= ... >= n_depth >= lower} a^{n_1} (-1/a;q)_{n_1}
///   q^{(n_1+1 choose 2) + n_2^2 + ... + n_depth^2 + n_from + ... + n_depth}
///   / ((q;q)_{n_1-n_2} ... (q;q)_{n_{depth-1}-n_depth} * last(n_depth)).
/// linear_from = 0 switches the linear term off.
struct MultisumSpec {
    int depth = 1;
    LastFactor last = LastFactor::zpair;
    int lower = 0;
    int linear_from = 0;
};

Series<ZPoly> successive_durfee_multisum(const MultisumSpec& spec, int trunc);

/// (-aq;q)_inf/(q;q)_inf * sum_{n in Z} (-1)^n a^n q^{exponent(n)} (-1/a;q)_n / (-aq;q)_n,
/// with exponent(n) = (e.a n^2 + e.b n)/2 exactly (numerator always even).
Series<ZPoly> overpartition_bilateral(const QuadraticBound& exponent, int trunc);

/// Two sides of the self-k-conjugate identity, marker a.
enum class Side { lhs, rhs };
Series<ZPoly> self_conjugate_series(int k, Side side, int trunc);

struct ReductionReport {
    int k = 0;
    int max_n = 0;
    std::size_t entries_checked = 0;
};

/// Checks Nbar_k(m,n,0) = N_k(m,n) on gf tables; throws VerificationFailure
/// naming the first bad (m, n).
ReductionReport reduction_check_a0(int k, int max_n);

} // namespace okrank
