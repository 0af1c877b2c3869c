#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "okrank/cache.hpp"
#include "okrank/cli.hpp"

using namespace okrank;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    TempDir()
    {
        std::random_device rd;
        path = fs::temp_directory_path() / ("okrank-test-" + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir()
    {
        std::error_code ec;
        fs::permissions(path, fs::perms::owner_all, ec);
        fs::remove_all(path, ec);
    }
};

std::size_t count_okrk(const fs::path& dir)
{
    std::size_t n = 0;
    for (const auto& e : fs::directory_iterator(dir)) {
        n += e.path().extension() == ".okrk" ? 1 : 0;
    }
    return n;
}

} // namespace

TEST_CASE("map on the worked example")
{
    const auto r = run({"map", "--overpartition", "13,10,9,7o,6,4o,4,4,3,1,1,1"});
    REQUIRE(r.code == exit_ok);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["vector"]["gamma_len"] == 6);
    CHECK(j["vector"]["delta"] == nlohmann::json::array({5, 3, 1, 0}));
    CHECK(j["vector"]["alpha"] == nlohmann::json::array({5, 5, 4, 2, 1, 1, 1}));
    CHECK(j["vector"]["beta"] == nlohmann::json::array({4, 4, 3, 1, 1, 1}));
    CHECK(j["kbar_rank"]["5"] == 2);

    const auto back = run({"map", "--inverse", "--vector", j["vector"].dump()});
    CHECK(back.code == exit_ok);
    CHECK(back.out == "13,10,9,7o,6,4o,4,4,3,1,1,1\n");
}

TEST_CASE("rank and conjugate")
{
    CHECK(run({"rank", "--k", "5", "--overpartition", "13,10,9,7o,6,4o,4,4,3,1,1,1"}).out == "2\n");
    CHECK(run({"rank", "--k", "3", "--overpartition", "2,1"}).out == "1\n");
    const auto c = run({"conjugate", "--k", "3", "--overpartition", "13,10,9,7o,6,4o,4,4,3,1,1,1"});
    REQUIRE(c.code == exit_ok);
    std::string img = c.out;
    img.pop_back();
    const auto twice = run({"conjugate", "--k", "3", "--overpartition", img});
    CHECK(twice.out == "13,10,9,7o,6,4o,4,4,3,1,1,1\n");
    const auto r1 = run({"rank", "--k", "3", "--overpartition", img});
    CHECK(std::stoi(r1.out) == -std::stoi(run({"rank", "--k", "3", "--overpartition",
                                                "13,10,9,7o,6,4o,4,4,3,1,1,1"})
                                              .out));
}

TEST_CASE("exit codes")
{
    CHECK(run({}).code == exit_usage);
    CHECK(run({"bogus"}).code == exit_usage);
    CHECK(run({"rank", "--k", "2", "--overpartition", "1,2"}).code == exit_usage);
    CHECK(run({"rank", "--k", "2", "--overpartition", "2o,2o"}).code == exit_usage);
    CHECK(run({"rank", "--k", "1", "--overpartition", "2,1"}).code == exit_domain);
    CHECK(run({"count", "--stat", "x", "--max-n", "3"}).code == exit_usage);
    CHECK(run({"count", "--stat", "n", "--method", "multisum", "--max-n", "3"}).code == exit_usage);
    CHECK(run({"count", "--stat", "n", "--max-n", "0"}).code == exit_usage);
    CHECK(run({"count", "--stat", "n", "--max-n", "3", "--format", "xml"}).code == exit_usage);
    CHECK(run({"map", "--inverse", "--vector", "{not json"}).code == exit_usage);
    CHECK(run({"map", "--inverse", "--vector", R"({"gamma_len":1,"delta":[3],"alpha":[],"beta":[]})"}).code ==
          exit_usage);
    CHECK(run({"verify", "--id", "nope"}).code == exit_usage);
    CHECK(run({"verify"}).code == exit_usage);
    CHECK(run({"verify", "--all", "--scale", "2"}).code == exit_usage);
    CHECK(run({"--version"}).code == exit_ok);
}

TEST_CASE("verify")
{
    const auto ok = run({"verify", "--id", "eqmock", "--order", "60"});
    CHECK(ok.code == exit_ok);
    CHECK(nlohmann::json::parse(ok.out)["outcome"] == "equal");

    const auto bad = run({"verify", "--id", "eqmock", "--order", "30", "--perturb", "7"});
    CHECK(bad.code == exit_mismatch);
    const auto j = nlohmann::json::parse(bad.out);
    CHECK(j["outcome"] == "mismatch");
    CHECK(j["mismatch"]["q_exp"] == 7);

    const auto all = run({"verify", "--all", "--scale", "0.25", "--jobs", "2"});
    CHECK(all.code == exit_ok);
    std::size_t lines = 0;
    for (char c : all.out) {
        lines += c == '\n' ? 1 : 0;
    }
    const auto ids = run({"list-identities"});
    std::size_t n_ids = 0;
    for (char c : ids.out) {
        n_ids += c == '\n' ? 1 : 0;
    }
    CHECK(lines == n_ids);
    CHECK(all.err.find(std::to_string(n_ids) + "/" + std::to_string(n_ids) + " identities equal") !=
          std::string::npos);
}

TEST_CASE("count formats")
{
    const auto tsv = run({"count", "--stat", "n", "--max-n", "4", "--method", "enum"});
    REQUIRE(tsv.code == exit_ok);
    CHECK(tsv.out.find("4\t-3\t0\t1\n") != std::string::npos);
    const auto js = run({"count", "--stat", "nbark", "--k", "3", "--max-n", "6", "--format", "json"});
    REQUIRE(js.code == exit_ok);
    const auto j = nlohmann::json::parse(js.out);
    CHECK(j["max_n"] == 6);
    CHECK(j["k"] == 3);
}

TEST_CASE("table cache")
{
    TempDir dir;
    const std::vector<std::string> args = {"count",       "--stat",    "nbark", "--k",
                                           "3",           "--max-n",   "10",    "--cache-dir",
                                           dir.path.string(), "--verbose"};
    const auto first = run(args);
    REQUIRE(first.code == exit_ok);
    CHECK(first.err.find("cache miss") != std::string::npos);
    CHECK(count_okrk(dir.path) == 1);

    const auto second = run(args);
    CHECK(second.code == exit_ok);
    CHECK(second.err.find("cache hit") != std::string::npos);
    CHECK(second.out == first.out);

    // corrupt one byte in the middle; the entry must be recomputed
    const fs::path file = fs::directory_iterator(dir.path)->path();
    {
        std::fstream f(file, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(static_cast<std::streamoff>(fs::file_size(file) / 2));
        f.put('\x7f');
    }
    const auto third = run(args);
    CHECK(third.err.find("cache miss") != std::string::npos);
    CHECK(third.out == first.out);

    // truncated file
    fs::resize_file(file, 9);
    const auto fourth = run(args);
    CHECK(fourth.err.find("cache miss") != std::string::npos);
    CHECK(fourth.out == first.out);
}

TEST_CASE("cache keys and versions")
{
    TempDir dir;
    const TableCache a(dir.path, nullptr, "1.0");
    const TableCache b(dir.path, nullptr, "2.0");
    REQUIRE(a.enabled());
    const auto t = rank_table(Stat::N, Method::gf, 8);
    CHECK(a.store(t));
    REQUIRE(a.load(Stat::N, Method::gf, 0, 8).has_value());
    CHECK(*a.load(Stat::N, Method::gf, 0, 8) == t);
    CHECK_FALSE(b.load(Stat::N, Method::gf, 0, 8).has_value());
    CHECK_FALSE(a.load(Stat::N, Method::gf, 0, 9).has_value());
    CHECK_FALSE(a.load(Stat::N, Method::enumeration, 0, 8).has_value());
    CHECK(a.path_for(a.key(Stat::N, Method::gf, 0, 8)) != b.path_for(b.key(Stat::N, Method::gf, 0, 8)));

    // a file whose stored key differs is a miss even at the right path
    fs::copy_file(a.path_for(a.key(Stat::N, Method::gf, 0, 8)), b.path_for(b.key(Stat::N, Method::gf, 0, 8)));
    CHECK_FALSE(b.load(Stat::N, Method::gf, 0, 8).has_value());

    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);

    const TableCache off("");
    CHECK_FALSE(off.enabled());
    CHECK_FALSE(off.store(t));
}

TEST_CASE("unwritable cache directory")
{
    TempDir dir;
    const fs::path ro = dir.path / "ro";
    fs::create_directories(ro);
    fs::permissions(ro, fs::perms::owner_read | fs::perms::owner_exec);
    {
        // root ignores permission bits; nothing to test then
        std::ofstream probe(ro / "x");
        if (probe) {
            fs::remove(ro / "x");
            return;
        }
    }
    const auto r = run({"count", "--stat", "n", "--max-n", "5", "--cache-dir", ro.string()});
    CHECK(r.code == exit_ok);
    CHECK(r.err.find("not writable") != std::string::npos);
}

TEST_CASE("cache path that is a regular file")
{
    TempDir dir;
    const fs::path file = dir.path / "plain";
    std::ofstream(file) << "x";
    const auto r = run({"count", "--stat", "n", "--max-n", "5", "--cache-dir", file.string()});
    CHECK(r.code == exit_ok);
    CHECK(r.err.find("not writable") != std::string::npos);
    CHECK(r.out == run({"count", "--stat", "n", "--max-n", "5"}).out);
}

TEST_CASE("installed binary")
{
    const std::string cmd = std::string(OKRANK_CLI_PATH) + " rank --k 5 --overpartition 13,10,9,7o,6,4o,4,4,3,1,1,1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[64] = {};
    const std::size_t got = fread(buf, 1, sizeof buf - 1, p);
    const int status = pclose(p);
    CHECK(std::string(buf, got) == "2\n");
    CHECK(status == 0);

    const std::string bad = std::string(OKRANK_CLI_PATH) + " rank --k 2 --overpartition 1,2 2>/dev/null";
    FILE* q = popen(bad.c_str(), "r");
    REQUIRE(q != nullptr);
    const int bad_status = pclose(q);
    CHECK(WEXITSTATUS(bad_status) == exit_usage);
}
