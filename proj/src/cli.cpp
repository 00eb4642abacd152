#include "rxgi/cli.hpp"

#include "rxgi/benchmarks.hpp"
#include "rxgi/io.hpp"
#include "rxgi/stats.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <limits>
#include <ostream>

namespace rxgi {

namespace fs = std::filesystem;

namespace {

unsigned default_workers()
{
    if (const char* env = std::getenv("RXGI_WORKERS")) {
        try {
            const auto n = std::stoul(env);
            if (n > 0)
                return static_cast<unsigned>(n);
        } catch (const std::exception&) {
        }
    }
    return 1;
}

struct SuiteSource {
    std::string problem;
    std::string suite_file;
};

void add_suite_options(CLI::App* app, SuiteSource& src)
{
    auto* p = app->add_option("--problem", src.problem, "built-in problem name (see `list`)");
    auto* s = app->add_option("--suite-file,--suite", src.suite_file, "suite JSON written by `boost`");
    p->excludes(s);
}

struct LoadedSuite {
    std::string name;
    TestSuite suite;
};

LoadedSuite load_suite(const SuiteSource& src, std::size_t max_generated)
{
    if (!src.suite_file.empty())
        return {fs::path(src.suite_file).stem().string(), suite_from_json(read_text_file(src.suite_file))};
    if (src.problem.empty())
        throw ConfigError("one of --problem or --suite-file is required");
    BoostConfig cfg;
    cfg.max_generated = max_generated;
    return {src.problem, problem_suite(load_problem(src.problem), cfg)};
}

const Grammar& grammar_for(const RunConfig& config, std::optional<Grammar>& storage)
{
    if (config.grammar_path.empty())
        return pcre_grammar();
    storage = load_grammar_file(config.grammar_path);
    return *storage;
}

fs::path run_dir(const fs::path& out, const std::string& problem, InitMethod method, std::size_t index)
{
    return out / problem / std::string(to_string(method)) / ("run-" + std::to_string(index));
}

void write_run(const fs::path& dir, const RunResult& r)
{
    write_text_file(dir / "result.json", result_to_json(r));
    write_text_file(dir / "generations.csv", generations_csv(r));
}

void print_fitness(std::ostream& out, const FitnessReport& f)
{
    out << "error " << f.functionality_error << "  cost " << format_double(f.cost_component);
}

void print_lineage(std::ostream& out, const RunResult& r)
{
    out << "seed  " << r.seed_phenotype << "  ";
    print_fitness(out, r.seed_fitness);
    out << "\n";
    for (const auto& e : r.lineage) {
        out << "gen " << std::setw(4) << e.generation << "  " << e.phenotype << "  ";
        print_fitness(out, e.fitness);
        out << "\n";
    }
    if (const auto s = r.speedup())
        out << "speedup " << format_double(*s) << "x\n";
    if (r.interrupted)
        out << "interrupted after generation " << r.generations.back().generation << "\n";
}

// Fields a subcommand may override from the command line; unset flags leave
// the config file (or default) value alone.
struct RunFlags {
    std::string config_file;
    std::optional<std::string> init;
    std::optional<std::string> mode;
    std::optional<std::size_t> pop;
    std::optional<std::size_t> gens;
    std::optional<std::size_t> elitism;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> grammar;
    std::optional<unsigned> workers;
    std::optional<std::size_t> max_generated;
    SuiteSource source;
    std::string out = "runs";
};

void add_run_flags(CLI::App* app, RunFlags& f, bool with_init)
{
    app->add_option("--config", f.config_file, "key = value configuration file")->check(CLI::ExistingFile);
    if (with_init)
        app->add_option("--init", f.init, "seed_only | rhh_seed | pigrow_seed");
    app->add_option("--mode", f.mode, "steps | wallclock");
    app->add_option("--pop", f.pop, "population size");
    app->add_option("--gens", f.gens, "generations");
    app->add_option("--elitism", f.elitism, "individuals copied unchanged each generation");
    app->add_option("--seed-prng", f.seed, "PRNG seed");
    app->add_option("--grammar", f.grammar, "BNF grammar file (default: built-in)");
    app->add_option("--workers", f.workers, "evaluation threads (default: $RXGI_WORKERS or 1)");
    app->add_option("--max-generated", f.max_generated, "cap on boosted suite size");
    app->add_option("--out", f.out, "output directory");
    add_suite_options(app, f.source);
}

RunConfig resolve_config(const RunFlags& f)
{
    RunConfig c;
    c.workers = default_workers();
    if (!f.config_file.empty())
        c = parse_config(read_text_file(f.config_file), c);
    if (f.init)
        c.initialisation = parse_init_method(*f.init);
    if (f.mode)
        set_config_value(c, "mode", *f.mode);
    if (f.pop)
        c.population_size = *f.pop;
    if (f.gens)
        c.generations = *f.gens;
    if (f.elitism)
        c.elitism_count = *f.elitism;
    if (f.seed)
        c.prng_seed = *f.seed;
    if (f.grammar)
        c.grammar_path = *f.grammar;
    if (f.workers)
        c.workers = *f.workers;
    if (f.max_generated)
        c.max_generated = *f.max_generated;
    if (!f.source.problem.empty()) {
        c.problem = f.source.problem;
        c.suite_path.clear();
    }
    if (!f.source.suite_file.empty()) {
        c.suite_path = f.source.suite_file;
        c.problem.clear();
    }
    validate_config(c);
    return c;
}

LoadedSuite suite_for(const RunConfig& c) { return load_suite({c.problem, c.suite_path}, c.max_generated); }

int cmd_list(bool as_json, std::ostream& out)
{
    const auto names = list_problems();
    if (as_json) {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& n : names) {
            const auto p = load_problem(n);
            j.push_back({{"name", p.name}, {"seed", p.seed}, {"base_inputs", p.base_inputs}});
        }
        out << j.dump(2) << "\n";
    } else {
        for (const auto& n : names)
            out << n << "\n";
    }
    return kExitOk;
}

int cmd_boost(const SuiteSource& src, const std::string& out_file, std::size_t max_generated, std::ostream& out)
{
    TestSuite suite;
    BoostConfig cfg;
    cfg.max_generated = max_generated;
    if (!src.suite_file.empty()) {
        const auto base = suite_from_json(read_text_file(src.suite_file));
        std::vector<std::string> inputs;
        for (const auto& c : base.cases)
            if (c.kind == CaseKind::positive)
                inputs.push_back(c.input);
        suite = boost(compile(base.seed), inputs, cfg);
    } else {
        suite = load_suite(src, max_generated).suite;
    }
    const auto text = suite_to_json(suite);
    if (out_file.empty()) {
        out << text;
    } else {
        write_text_file(out_file, text);
        std::size_t neg = 0;
        for (const auto& c : suite.cases)
            neg += c.kind == CaseKind::negative;
        out << "wrote " << out_file << ": " << suite.cases.size() - neg << " positive, " << neg << " negative\n";
    }
    return kExitOk;
}

int cmd_run(const RunFlags& flags, std::size_t run_index, std::ostream& out, const std::atomic<bool>* stop)
{
    const auto config = resolve_config(flags);
    std::optional<Grammar> storage;
    const auto& grammar = grammar_for(config, storage);
    const auto loaded = suite_for(config);
    const auto result = evolve(config, loaded.suite, grammar, stop);
    const auto dir = run_dir(flags.out, loaded.name, config.initialisation, run_index);
    write_run(dir, result);
    print_lineage(out, result);
    out << "wrote " << (dir / "result.json").string() << "\n";
    return result.interrupted ? kExitInterrupted : kExitOk;
}

int cmd_compare(const RunFlags& flags, std::size_t runs, std::vector<std::string> methods, std::ostream& out,
                const std::atomic<bool>* stop)
{
    if (runs < 2)
        throw ConfigError("--runs must be at least 2");
    if (methods.empty())
        methods = {"seed_only", "rhh_seed", "pigrow_seed"};
    if (methods.size() < 2)
        throw ConfigError("compare needs at least two methods");
    auto base = resolve_config(flags);
    std::optional<Grammar> storage;
    const auto& grammar = grammar_for(base, storage);
    const auto loaded = suite_for(base);

    std::vector<std::pair<std::string, std::vector<RunResult>>> results;
    for (std::size_t m = 0; m < methods.size(); ++m) {
        auto config = base;
        config.initialisation = parse_init_method(methods[m]);
        // A method listed twice gets its own output directory.
        std::string label = methods[m];
        for (std::size_t k = 0; k < m; ++k)
            if (methods[k] == methods[m])
                label += "+";
        std::vector<RunResult> per_method;
        for (std::size_t r = 0; r < runs; ++r) {
            config.prng_seed = base.prng_seed + r;
            auto result = evolve(config, loaded.suite, grammar, stop);
            const auto dir = fs::path(flags.out) / loaded.name / label / ("run-" + std::to_string(r));
            write_run(dir, result);
            out << label << " run " << r << ": best " << result.best_phenotype;
            if (const auto s = result.speedup())
                out << "  speedup " << format_double(*s) << "x";
            out << "\n";
            if (result.interrupted) {
                out << "interrupted; comparison not computed\n";
                return kExitInterrupted;
            }
            per_method.push_back(std::move(result));
        }
        results.emplace_back(label, std::move(per_method));
    }

    Rng rng(base.prng_seed);
    const auto cmp = compare_initialisations(loaded.name, results, rng);
    const auto dir = fs::path(flags.out) / loaded.name / "comparison";
    for (const auto& p : cmp.pairs) {
        write_text_file(dir / (p.label() + ".csv"), bootstrap_csv(cmp.problem, p));
        const auto& q = p.distribution.quartiles;
        out << p.label() << ": Q1 " << format_double(q.q1) << "  median " << format_double(q.median) << "  Q3 "
            << format_double(q.q3) << (p.distribution.significant ? "  significant" : "  not significant") << "\n";
    }
    write_text_file(dir / "quartiles.csv", quartiles_csv(cmp));
    write_text_file(dir / "speedups.csv", speedups_csv(cmp));
    out << "wrote " << dir.string() << "\n";
    return kExitOk;
}

struct BenchSide {
    std::vector<std::uint64_t> steps;
    std::vector<double> seconds;
    std::uint64_t error = 0;
};

BenchSide bench_one(const CompiledRegex& re, const TestSuite& suite)
{
    BenchSide side;
    std::vector<MatchList> matches;
    for (const auto& c : suite.cases) {
        auto m = find_all(re, c.input, std::numeric_limits<std::uint64_t>::max());
        side.steps.push_back(m.steps);
        double best = std::numeric_limits<double>::infinity();
        for (int r = 0; r < 3; ++r) {
            const auto t0 = std::chrono::steady_clock::now();
            find_all(re, c.input, std::numeric_limits<std::uint64_t>::max());
            const auto t1 = std::chrono::steady_clock::now();
            best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
        }
        side.seconds.push_back(best);
        matches.push_back(std::move(m));
    }
    side.error = functionality_error(matches, suite);
    return side;
}

int cmd_bench(const std::string& a, const std::string& b, const SuiteSource& src, bool per_case, std::ostream& out,
              std::ostream& err)
{
    std::optional<CompiledRegex> ra;
    std::optional<CompiledRegex> rb;
    try {
        ra = compile(a);
    } catch (const RegexSyntaxError& e) {
        err << "pattern A: " << e.what() << "\n";
    }
    try {
        rb = compile(b);
    } catch (const RegexSyntaxError& e) {
        err << "pattern B: " << e.what() << "\n";
    }
    if (!ra || !rb)
        return !ra && !rb ? kExitBadRegexBoth : (!ra ? kExitBadRegexA : kExitBadRegexB);

    const auto loaded = load_suite(src, 500);
    const auto sa = bench_one(*ra, loaded.suite);
    const auto sb = bench_one(*rb, loaded.suite);
    if (per_case) {
        out << "case,steps_a,steps_b,seconds_a,seconds_b\n";
        for (std::size_t i = 0; i < loaded.suite.cases.size(); ++i)
            out << i << "," << sa.steps[i] << "," << sb.steps[i] << "," << format_double(sa.seconds[i]) << ","
                << format_double(sb.seconds[i]) << "\n";
    }
    auto total = [](const auto& v) {
        typename std::decay_t<decltype(v)>::value_type t{};
        for (const auto x : v)
            t += x;
        return t;
    };
    out << "A " << a << "\n  steps " << total(sa.steps) << "  seconds " << format_double(total(sa.seconds))
        << "  error " << sa.error << "\n";
    out << "B " << b << "\n  steps " << total(sb.steps) << "  seconds " << format_double(total(sb.seconds))
        << "  error " << sb.error << "\n";
    if (total(sb.steps) > 0)
        out << "step ratio A/B " << format_double(static_cast<double>(total(sa.steps)) / total(sb.steps)) << "\n";
    return kExitOk;
}

int cmd_seed_check(const std::vector<std::string>& patterns, const std::string& grammar_path, std::ostream& out)
{
    RunConfig c;
    c.grammar_path = grammar_path;
    std::optional<Grammar> storage;
    const auto& grammar = grammar_for(c, storage);
    std::vector<std::pair<std::string, std::string>> items;
    if (patterns.empty()) {
        for (const auto& n : list_problems())
            items.emplace_back(n, load_problem(n).seed);
    } else {
        for (const auto& p : patterns)
            items.emplace_back("", p);
    }
    bool ok = true;
    for (const auto& [name, pattern] : items) {
        if (!name.empty())
            out << name << ": ";
        try {
            const auto parse = parse_regex_to_tree(pattern, grammar);
            const auto mapped = map_genome(parse.genome, grammar, {0, std::numeric_limits<std::uint32_t>::max()});
            const bool same = mapped.tree && tree_to_phenotype(*mapped.tree, grammar) == pattern;
            ok &= same;
            out << (same ? "ok" : "MISMATCH") << "  depth " << tree_depth(parse.tree) << "  codons "
                << parse.genome.codons.size() << "  " << pattern << "\n";
        } catch (const SeedParseError& e) {
            ok = false;
            out << "not derivable at offset " << e.position() << ": " << pattern << "\n";
        }
    }
    return ok ? kExitOk : kExitFailure;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const std::atomic<bool>* stop)
{
    CLI::App app{"Evolve faster regular expressions with grammatical evolution", "rxgi"};
    app.require_subcommand(1);

    bool list_json = false;
    auto* list = app.add_subcommand("list", "list built-in problems");
    list->add_flag("--json", list_json, "machine-readable output");

    SuiteSource boost_src;
    std::string boost_out;
    std::size_t boost_max = 500;
    auto* boostc = app.add_subcommand("boost", "generate a test suite from a problem's seed and examples");
    add_suite_options(boostc, boost_src);
    boostc->add_option("--out", boost_out, "output file (default: stdout)");
    boostc->add_option("--max-generated", boost_max, "cap on suite size");

    RunFlags run_flags;
    std::size_t run_index = 0;
    auto* run = app.add_subcommand("run", "evolve one problem");
    add_run_flags(run, run_flags, true);
    run->add_option("--run-index", run_index, "N in the run-N output directory");

    RunFlags cmp_flags;
    std::size_t runs = 0;
    std::vector<std::string> methods;
    auto* cmp = app.add_subcommand("compare", "compare initialisation methods by bootstrap");
    add_run_flags(cmp, cmp_flags, false);
    cmp->add_option("--runs", runs, "runs per method (at least 2)")->required();
    cmp->add_option("methods", methods, "initialisation methods (default: all three)");

    std::string bench_a;
    std::string bench_b;
    SuiteSource bench_src;
    bool bench_cases = false;
    auto* bench = app.add_subcommand("bench", "compare two patterns on a suite");
    bench->add_option("regex_a", bench_a)->required();
    bench->add_option("regex_b", bench_b)->required();
    add_suite_options(bench, bench_src);
    bench->add_flag("--per-case", bench_cases, "print per-case CSV");

    std::vector<std::string> seed_patterns;
    std::string seed_grammar;
    auto* seed = app.add_subcommand("seed-check", "check that seeds derive from the grammar and round-trip");
    seed->add_option("patterns", seed_patterns, "patterns to check (default: every built-in seed)");
    seed->add_option("--grammar", seed_grammar, "BNF grammar file (default: built-in)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << sub->help();
        return kExitUsage;
    }

    try {
        if (*list)
            return cmd_list(list_json, out);
        if (*boostc)
            return cmd_boost(boost_src, boost_out, boost_max, out);
        if (*run)
            return cmd_run(run_flags, run_index, out, stop);
        if (*cmp)
            return cmd_compare(cmp_flags, runs, methods, out, stop);
        if (*bench)
            return cmd_bench(bench_a, bench_b, bench_src, bench_cases, out, err);
        if (*seed)
            return cmd_seed_check(seed_patterns, seed_grammar, out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UnknownProblemError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}

} // namespace rxgi
