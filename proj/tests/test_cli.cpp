#include "rxgi/cli.hpp"
#include "rxgi/io.hpp"

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <sstream>

using namespace rxgi;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome cli(const std::vector<std::string>& args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name)
{
    auto dir = fs::temp_directory_path() / ("rxgi-cli-test-" + name);
    fs::remove_all(dir);
    return dir;
}

std::size_t count_lines(const std::string& s)
{
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

} // namespace

TEST_CASE("list")
{
    const auto plain = cli({"list"});
    CHECK(plain.code == kExitOk);
    CHECK(count_lines(plain.out) == 9);
    CHECK(plain.out.find("catastrophic_qt3ts") != std::string::npos);
    const auto json = cli({"list", "--json"});
    CHECK(json.code == kExitOk);
    CHECK(nlohmann::json::parse(json.out).size() == 9);
}

TEST_CASE("usage errors")
{
    CHECK(cli({}).code == kExitUsage);
    CHECK(cli({"--help"}).code == kExitOk);
    CHECK(cli({"frobnicate"}).code == kExitUsage);
    CHECK(cli({"boost"}).code == kExitUsage);
    CHECK(cli({"boost", "--problem", "no_such_problem"}).code != kExitOk);
    CHECK(cli({"run", "--problem", "iso8601", "--pop", "10", "--elitism", "20"}).code == kExitUsage);
}

TEST_CASE("boost writes a reproducible suite")
{
    const auto dir = scratch("boost");
    const auto a = dir / "a.json";
    const auto b = dir / "b.json";
    REQUIRE(cli({"boost", "--problem", "mac_address_search", "--out", a.string()}).code == kExitOk);
    REQUIRE(cli({"boost", "--problem", "mac_address_search", "--out", b.string()}).code == kExitOk);
    CHECK(read_text_file(a) == read_text_file(b));
    const auto suite = suite_from_json(read_text_file(a));
    std::size_t pos = 0;
    std::size_t neg = 0;
    for (const auto& c : suite.cases)
        (c.kind == CaseKind::positive ? pos : neg) += 1;
    CHECK(pos >= 1);
    CHECK(neg >= 1);

    // Boosting from a suite file reuses its positive inputs.
    const auto c = dir / "c.json";
    REQUIRE(cli({"boost", "--suite", a.string(), "--out", c.string()}).code == kExitOk);
    CHECK(suite_from_json(read_text_file(c)) == suite);
    fs::remove_all(dir);
}

TEST_CASE("run writes results and is reproducible in steps mode")
{
    const auto dir = scratch("run");
    const std::vector<std::string> base{"run", "--problem", "catastrophic_qt3ts", "--pop", "30", "--elitism", "3",
                                        "--gens", "4", "--seed-prng", "9"};
    auto first = base;
    first.insert(first.end(), {"--out", (dir / "1").string()});
    auto second = base;
    second.insert(second.end(), {"--out", (dir / "2").string()});
    const auto r1 = cli(first);
    REQUIRE(r1.code == kExitOk);
    REQUIRE(cli(second).code == kExitOk);
    const auto rel = fs::path("catastrophic_qt3ts") / "seed_only" / "run-0";
    const auto j1 = read_text_file(dir / "1" / rel / "result.json");
    CHECK(j1 == read_text_file(dir / "2" / rel / "result.json"));
    const auto result = result_from_json(j1);
    CHECK(result.generations.size() == 5);
    CHECK(result.config.population_size == 30);
    CHECK(generations_from_csv(read_text_file(dir / "1" / rel / "generations.csv")) == result.generations);
    CHECK(r1.out.find("seed ") != std::string::npos);

    auto zero = base;
    zero[8] = "0";
    zero.insert(zero.end(), {"--out", (dir / "0").string(), "--run-index", "3"});
    REQUIRE(cli(zero).code == kExitOk);
    const auto z = result_from_json(
        read_text_file(dir / "0" / "catastrophic_qt3ts" / "seed_only" / "run-3" / "result.json"));
    CHECK(z.generations.size() == 1);
    CHECK(z.best_phenotype == z.seed_phenotype);
    fs::remove_all(dir);
}

TEST_CASE("run honours a config file and flag overrides")
{
    const auto dir = scratch("config");
    const auto cfg = dir / "small.cfg";
    write_text_file(cfg, "population = 12\nelitism = 2\ngenerations = 2\nproblem = iso8601\ninitialisation = rhh_seed\n");
    REQUIRE(cli({"run", "--config", cfg.string(), "--gens", "1", "--out", dir.string()}).code == kExitOk);
    const auto r = result_from_json(read_text_file(dir / "iso8601" / "rhh_seed" / "run-0" / "result.json"));
    CHECK(r.config.population_size == 12);
    CHECK(r.config.generations == 1);
    CHECK(r.generations.size() == 2);
    fs::remove_all(dir);
}

TEST_CASE("compare")
{
    const auto dir = scratch("compare");
    const std::vector<std::string> common{"--problem", "catastrophic_qt3ts", "--pop", "20", "--elitism", "2",
                                          "--gens", "2", "--runs", "2", "--out", dir.string()};
    auto all = std::vector<std::string>{"compare"};
    all.insert(all.end(), common.begin(), common.end());
    REQUIRE(cli(all).code == kExitOk);
    const auto cmp = dir / "catastrophic_qt3ts" / "comparison";
    CHECK(fs::exists(cmp / "seed_only-vs-rhh_seed.csv"));
    CHECK(fs::exists(cmp / "seed_only-vs-pigrow_seed.csv"));
    CHECK(fs::exists(cmp / "rhh_seed-vs-pigrow_seed.csv"));
    const auto quart = parse_csv(read_text_file(cmp / "quartiles.csv"));
    CHECK(quart.size() == 4);
    CHECK(parse_csv(read_text_file(cmp / "speedups.csv")).size() == 7);
    CHECK(parse_csv(read_text_file(cmp / "seed_only-vs-rhh_seed.csv")).size() == 1001);

    fs::remove_all(dir);
    auto twice = std::vector<std::string>{"compare", "seed_only", "seed_only"};
    twice.insert(twice.end(), common.begin(), common.end());
    const auto t = cli(twice);
    REQUIRE(t.code == kExitOk);
    CHECK(t.out.find("not significant") != std::string::npos);
    CHECK(fs::exists(dir / "catastrophic_qt3ts" / "seed_only+" / "run-1" / "result.json"));

    auto one = std::vector<std::string>{"compare"};
    one.insert(one.end(), common.begin(), common.end());
    one[10] = "1";
    CHECK(cli(one).code == kExitUsage);
    fs::remove_all(dir);
}

TEST_CASE("bench")
{
    const auto same = cli({"bench", ".X(.+)+X", ".X(.+)+X", "--problem", "catastrophic_qt3ts"});
    REQUIRE(same.code == kExitOk);
    CHECK(same.out.find("step ratio A/B 1\n") != std::string::npos);

    const auto worse = cli({"bench", ".X(.+)+XX", ".X(.+)XX", "--problem", "catastrophic_qt3ts"});
    REQUIRE(worse.code == kExitOk);
    const auto at = worse.out.find("step ratio A/B ");
    REQUIRE(at != std::string::npos);
    CHECK(std::stod(worse.out.substr(at + 15)) > 1.0);

    CHECK(cli({"bench", "(", "a", "--problem", "iso8601"}).code == kExitBadRegexA);
    CHECK(cli({"bench", "a", "(", "--problem", "iso8601"}).code == kExitBadRegexB);
    CHECK(cli({"bench", "(", "[", "--problem", "iso8601"}).code == kExitBadRegexBoth);

    const auto cases = cli({"bench", "a", "b", "--problem", "iso8601", "--per-case"});
    CHECK(cases.out.rfind("case,steps_a", 0) == 0);
}

TEST_CASE("seed-check")
{
    const auto all = cli({"seed-check"});
    CHECK(all.code == kExitOk);
    CHECK(all.out.find("MISMATCH") == std::string::npos);
    CHECK(cli({"seed-check", ".X(.+)+XX"}).code == kExitOk);
}
