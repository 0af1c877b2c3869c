#include "okrank/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "okrank/bijection.hpp"
#include "okrank/cache.hpp"
#include "okrank/counting.hpp"
#include "okrank/identities.hpp"
#include "okrank/partition.hpp"

namespace okrank {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) { return std::chrono::duration<double, std::milli>(Clock::now() - t0).count(); }

struct CountArgs {
    std::string stat;
    std::string method = "gf";
    std::string format = "tsv";
    std::string cache_dir;
    int k = 0;
    int max_n = 0;
    bool verbose = false;
};

int do_count(const CountArgs& a, std::ostream& out, std::ostream& err)
{
    const Stat stat = parse_stat(a.stat);
    const Method method = parse_method(a.method);
    const int k = (stat == Stat::Nk || stat == Stat::Nbark) ? a.k : 0;
    if (a.format != "tsv" && a.format != "json") {
        throw UsageError("--format must be tsv or json");
    }
    std::string dir = a.cache_dir;
    if (dir.empty()) {
        if (const char* env = std::getenv("OKRANK_CACHE")) {
            dir = env;
        }
    }
    const TableCache cache(dir, &err);
    const auto t0 = Clock::now();
    std::optional<RankTable> table = cache.load(stat, method, k, a.max_n);
    if (table) {
        if (a.verbose) {
            err << "cache hit " << cache.path_for(cache.key(stat, method, k, a.max_n)).string() << " in "
                << ms_since(t0) << " ms\n";
        }
    } else {
        table = rank_table(stat, method, a.max_n, k);
        const bool stored = cache.store(*table);
        if (a.verbose) {
            err << (cache.enabled() ? "cache miss" : "cache off") << ", computed in " << ms_since(t0) << " ms"
                << (stored ? ", stored" : "") << "\n";
        }
    }
    if (a.format == "json") {
        out << to_json(*table).dump() << "\n";
    } else {
        out << to_tsv(*table);
    }
    return exit_ok;
}

int do_verify(const std::string& id, bool all, std::optional<int> order, double scale, int jobs,
              std::optional<int> perturb, std::ostream& out, std::ostream& err)
{
    if (all == !id.empty()) {
        throw UsageError("verify needs exactly one of --id or --all");
    }
    std::vector<VerificationReport> reports;
    if (all) {
        if (order || perturb) {
            throw UsageError("--order and --perturb apply to --id only");
        }
        reports = verify_all(scale, jobs);
    } else {
        reports.push_back(verify(id, {order, perturb}));
    }
    std::size_t equal = 0;
    for (const auto& r : reports) {
        out << to_json(r).dump() << "\n";
        equal += r.equal() ? 1 : 0;
    }
    if (all) {
        err << equal << "/" << reports.size() << " identities equal\n";
    }
    return equal == reports.size() ? exit_ok : exit_mismatch;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"overpartition kbar-rank toolkit", "okrank"};
    app.set_version_flag("--version", std::string(OKRANK_VERSION));
    app.require_subcommand(1);

    CountArgs count;
    auto* c = app.add_subcommand("count", "rank table for one statistic");
    c->add_option("--stat", count.stat, "n | m | nk | nbar | nbark")->required();
    c->add_option("--k", count.k, "k for nk / nbark");
    c->add_option("--max-n", count.max_n, "largest weight")->required()->check(CLI::PositiveNumber);
    c->add_option("--method", count.method, "gf | multisum | enum");
    c->add_option("--format", count.format, "tsv | json");
    c->add_option("--cache-dir", count.cache_dir, "table cache (default $OKRANK_CACHE)");
    c->add_flag("--verbose", count.verbose, "report cache hits and timing on stderr");

    std::string over_text;
    std::string vector_text;
    bool inverse = false;
    auto* m = app.add_subcommand("map", "overpartition <-> vector partition");
    m->add_option("--overpartition", over_text, "e.g. 13,10,9,7o,6");
    m->add_flag("--inverse", inverse, "read --vector JSON and print the overpartition");
    m->add_option("--vector", vector_text, "vector partition JSON");

    int k = 2;
    auto* r = app.add_subcommand("rank", "kbar-rank of an overpartition");
    r->add_option("--k", k)->required();
    r->add_option("--overpartition", over_text)->required();

    auto* cj = app.add_subcommand("conjugate", "image under k-conjugation");
    cj->add_option("--k", k)->required();
    cj->add_option("--overpartition", over_text)->required();

    std::string id;
    bool all = false;
    std::optional<int> order;
    std::optional<int> perturb;
    double scale = 1.0;
    int jobs = 1;
    auto* v = app.add_subcommand("verify", "check registered identities");
    v->add_option("--id", id);
    v->add_flag("--all", all);
    v->add_option("--order", order);
    v->add_option("--scale", scale);
    v->add_option("--jobs", jobs)->check(CLI::PositiveNumber);
    v->add_option("--perturb", perturb, "add q^E to the left side (self-test)");

    auto* l = app.add_subcommand("list-identities", "print registered identity ids");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*c) {
            return do_count(count, out, err);
        }
        if (*m) {
            if (inverse) {
                if (vector_text.empty()) {
                    throw UsageError("map --inverse needs --vector");
                }
                const auto vp = vector_partition_from_json(nlohmann::json::parse(vector_text));
                out << format(vector_to_over(vp)) << "\n";
                return exit_ok;
            }
            const Overpartition o = parse_overpartition(over_text);
            nlohmann::json ranks = nlohmann::json::object();
            if (!o.empty()) {
                for (int kk = 2; kk <= 5; ++kk) {
                    ranks[std::to_string(kk)] = kbar_rank(o, kk);
                }
            }
            out << nlohmann::json{{"overpartition", format(o)},
                                  {"vector", to_json(over_to_vector(o))},
                                  {"kbar_rank", ranks}}
                       .dump()
                << "\n";
            return exit_ok;
        }
        if (*r) {
            out << kbar_rank(parse_overpartition(over_text), k) << "\n";
            return exit_ok;
        }
        if (*cj) {
            out << format(k_conjugate(parse_overpartition(over_text), k)) << "\n";
            return exit_ok;
        }
        if (*v) {
            return do_verify(id, all, order, scale, jobs, perturb, out, err);
        }
        if (*l) {
            for (const auto& name : list_identities()) {
                out << name << "\n";
            }
            return exit_ok;
        }
    } catch (const nlohmann::json::exception& e) {
        err << "error: bad JSON: " << e.what() << "\n";
        return exit_usage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const VerificationFailure& e) {
        err << "verification failed: " << e.what() << "\n";
        return exit_mismatch;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_domain;
    }
    return exit_usage;
}

} // namespace okrank
