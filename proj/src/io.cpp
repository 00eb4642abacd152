#include "rxgi/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace rxgi {

using nlohmann::json;

namespace {

std::string_view kind_name(CaseKind k) { return k == CaseKind::positive ? "positive" : "negative"; }

CaseKind parse_kind(const std::string& s)
{
    if (s == "positive")
        return CaseKind::positive;
    if (s == "negative")
        return CaseKind::negative;
    throw IoError("unknown case kind '" + s + "'");
}

json lineage_json(const LineageEntry& e)
{
    return json{{"generation", e.generation}, {"phenotype", e.phenotype}, {"fitness", e.fitness}};
}

LineageEntry lineage_from(const json& j)
{
    LineageEntry e;
    j.at("generation").get_to(e.generation);
    j.at("phenotype").get_to(e.phenotype);
    j.at("fitness").get_to(e.fitness);
    return e;
}

} // namespace

void to_json(json& j, const TestSuite& suite)
{
    json cases = json::array();
    for (const auto& c : suite.cases) {
        json spans = json::array();
        for (const auto& s : c.expected)
            spans.push_back({s.start, s.end});
        cases.push_back({{"input", c.input}, {"expected", spans}, {"kind", kind_name(c.kind)}});
    }
    j = json{{"seed", suite.seed}, {"cases", cases}};
}

void from_json(const json& j, TestSuite& suite)
{
    suite = {};
    j.at("seed").get_to(suite.seed);
    for (const auto& c : j.at("cases")) {
        TestCase tc;
        c.at("input").get_to(tc.input);
        for (const auto& s : c.at("expected")) {
            if (!s.is_array() || s.size() != 2)
                throw IoError("expected span must be a [start, end] pair");
            tc.expected.push_back(Span{s[0].get<std::size_t>(), s[1].get<std::size_t>()});
        }
        tc.kind = parse_kind(c.at("kind").get<std::string>());
        suite.cases.push_back(std::move(tc));
    }
}

void to_json(json& j, const FitnessReport& r)
{
    j = json{{"functionality_error", r.functionality_error},
             {"cost_component", r.cost_component},
             {"combined", r.combined},
             {"mode", to_string(r.mode)},
             {"detail", r.detail},
             {"timed_out", r.timed_out},
             {"valid", r.valid}};
}

void from_json(const json& j, FitnessReport& r)
{
    j.at("functionality_error").get_to(r.functionality_error);
    j.at("cost_component").get_to(r.cost_component);
    j.at("combined").get_to(r.combined);
    r.mode = parse_fitness_mode(j.at("mode").get<std::string>());
    j.at("detail").get_to(r.detail);
    j.at("timed_out").get_to(r.timed_out);
    j.at("valid").get_to(r.valid);
}

void to_json(json& j, const RunConfig& c)
{
    j = json{{"population_size", c.population_size},
             {"generations", c.generations},
             {"initialisation", to_string(c.initialisation)},
             {"crossover_rate", c.crossover_rate},
             {"mutation_events", c.mutation_events},
             {"tournament_size", c.tournament_size},
             {"elitism_count", c.elitism_count},
             {"grammar_path", c.grammar_path},
             {"problem", c.problem},
             {"suite_path", c.suite_path},
             {"mode", to_string(c.mode)},
             {"prng_seed", c.prng_seed},
             {"time_limit_seconds", c.budgets.time_limit_seconds},
             {"repetitions", c.budgets.repetitions},
             {"step_normalizer", c.budgets.step_normalizer},
             {"max_tree_depth_extra", c.max_tree_depth_extra},
             {"init_min_depth", c.init_min_depth},
             {"init_max_depth", c.init_max_depth},
             {"max_generated", c.max_generated},
             {"workers", c.workers}};
}

void from_json(const json& j, RunConfig& c)
{
    j.at("population_size").get_to(c.population_size);
    j.at("generations").get_to(c.generations);
    c.initialisation = parse_init_method(j.at("initialisation").get<std::string>());
    j.at("crossover_rate").get_to(c.crossover_rate);
    j.at("mutation_events").get_to(c.mutation_events);
    j.at("tournament_size").get_to(c.tournament_size);
    j.at("elitism_count").get_to(c.elitism_count);
    j.at("grammar_path").get_to(c.grammar_path);
    j.at("problem").get_to(c.problem);
    j.at("suite_path").get_to(c.suite_path);
    c.mode = parse_fitness_mode(j.at("mode").get<std::string>());
    j.at("prng_seed").get_to(c.prng_seed);
    j.at("time_limit_seconds").get_to(c.budgets.time_limit_seconds);
    j.at("repetitions").get_to(c.budgets.repetitions);
    j.at("step_normalizer").get_to(c.budgets.step_normalizer);
    j.at("max_tree_depth_extra").get_to(c.max_tree_depth_extra);
    j.at("init_min_depth").get_to(c.init_min_depth);
    j.at("init_max_depth").get_to(c.init_max_depth);
    j.at("max_generated").get_to(c.max_generated);
    j.at("workers").get_to(c.workers);
}

void to_json(json& j, const RunResult& r)
{
    json gens = json::array();
    for (const auto& g : r.generations)
        gens.push_back({{"generation", g.generation},
                        {"best_combined", g.best_combined},
                        {"best_error", g.best_error},
                        {"best_cost", g.best_cost},
                        {"best_phenotype", g.best_phenotype},
                        {"mean_combined", g.mean_combined},
                        {"distinct_phenotypes", g.distinct_phenotypes},
                        {"evaluations", g.evaluations}});
    json lineage = json::array();
    for (const auto& e : r.lineage)
        lineage.push_back(lineage_json(e));
    j = json{{"config", r.config},
             {"prng_seed", r.config.prng_seed},
             {"seed_phenotype", r.seed_phenotype},
             {"seed_fitness", r.seed_fitness},
             {"generations", gens},
             {"lineage", lineage},
             {"best_phenotype", r.best_phenotype},
             {"best_fitness", r.best_fitness},
             {"best_error_free", r.best_error_free ? lineage_json(*r.best_error_free) : json(nullptr)},
             {"interrupted", r.interrupted}};
    if (const auto s = r.speedup())
        j["speedup"] = *s;
    else
        j["speedup"] = nullptr;
}

void from_json(const json& j, RunResult& r)
{
    r = {};
    j.at("config").get_to(r.config);
    j.at("seed_phenotype").get_to(r.seed_phenotype);
    j.at("seed_fitness").get_to(r.seed_fitness);
    for (const auto& g : j.at("generations")) {
        GenerationRecord rec;
        g.at("generation").get_to(rec.generation);
        g.at("best_combined").get_to(rec.best_combined);
        g.at("best_error").get_to(rec.best_error);
        g.at("best_cost").get_to(rec.best_cost);
        g.at("best_phenotype").get_to(rec.best_phenotype);
        g.at("mean_combined").get_to(rec.mean_combined);
        g.at("distinct_phenotypes").get_to(rec.distinct_phenotypes);
        g.at("evaluations").get_to(rec.evaluations);
        r.generations.push_back(std::move(rec));
    }
    for (const auto& e : j.at("lineage"))
        r.lineage.push_back(lineage_from(e));
    j.at("best_phenotype").get_to(r.best_phenotype);
    j.at("best_fitness").get_to(r.best_fitness);
    if (!j.at("best_error_free").is_null())
        r.best_error_free = lineage_from(j.at("best_error_free"));
    j.at("interrupted").get_to(r.interrupted);
}

std::string suite_to_json(const TestSuite& suite) { return json(suite).dump(2) + "\n"; }

TestSuite suite_from_json(std::string_view text)
{
    TestSuite suite;
    try {
        json::parse(text).get_to(suite);
        validate_suite(suite);
    } catch (const json::exception& e) {
        throw IoError(std::string("malformed suite: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw IoError(std::string("invalid suite: ") + e.what());
    }
    return suite;
}

std::string result_to_json(const RunResult& result) { return json(result).dump(2) + "\n"; }

RunResult result_from_json(std::string_view text)
{
    RunResult r;
    try {
        json::parse(text).get_to(r);
    } catch (const json::exception& e) {
        throw IoError(std::string("malformed run result: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw IoError(std::string("malformed run result: ") + e.what());
    }
    return r;
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content)
{
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out)
            throw IoError("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string csv_field(std::string_view text)
{
    if (text.find_first_of(",\"\r\n") == std::string_view::npos)
        return std::string(text);
    std::string out = "\"";
    for (const char c : text) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string format_double(double value)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::string to_csv(const CsvRow& header, const std::vector<CsvRow>& rows)
{
    std::string out;
    auto line = [&](const CsvRow& row) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i)
                out += ',';
            out += csv_field(row[i]);
        }
        out += '\n';
    };
    line(header);
    for (const auto& r : rows)
        line(r);
    return out;
}

std::vector<CsvRow> parse_csv(std::string_view text)
{
    std::vector<CsvRow> rows;
    CsvRow row;
    std::string field;
    bool quoted = false;
    bool in_row = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        in_row = true;
        if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            row.push_back(std::move(field));
            field.clear();
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n')
                ++i;
            row.push_back(std::move(field));
            field.clear();
            rows.push_back(std::move(row));
            row.clear();
            in_row = false;
        } else {
            field += c;
        }
    }
    if (quoted)
        throw IoError("unterminated quoted CSV field");
    if (in_row) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string generations_csv(const RunResult& result)
{
    std::vector<CsvRow> rows;
    for (const auto& g : result.generations)
        rows.push_back({std::to_string(g.generation), format_double(g.best_combined), std::to_string(g.best_error),
                        format_double(g.best_cost), format_double(g.mean_combined),
                        std::to_string(g.distinct_phenotypes), std::to_string(g.evaluations), g.best_phenotype});
    return to_csv({"generation", "best_combined", "best_error", "best_cost", "mean_combined", "distinct",
                   "evaluations", "best_phenotype"},
                  rows);
}

namespace {

template <typename T>
T parse_number(std::string_view s, std::string_view what)
{
    T v{};
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw IoError("bad " + std::string(what) + " value '" + std::string(s) + "'");
    return v;
}

} // namespace

std::vector<GenerationRecord> generations_from_csv(std::string_view text)
{
    const auto rows = parse_csv(text);
    if (rows.empty())
        throw IoError("empty generations CSV");
    std::vector<GenerationRecord> out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r.size() != 8)
            throw IoError("generations CSV row " + std::to_string(i) + " has " + std::to_string(r.size()) +
                          " fields");
        GenerationRecord g;
        g.generation = parse_number<std::size_t>(r[0], "generation");
        g.best_combined = parse_number<double>(r[1], "best_combined");
        g.best_error = parse_number<std::uint64_t>(r[2], "best_error");
        g.best_cost = parse_number<double>(r[3], "best_cost");
        g.mean_combined = parse_number<double>(r[4], "mean_combined");
        g.distinct_phenotypes = parse_number<std::size_t>(r[5], "distinct");
        g.evaluations = parse_number<std::size_t>(r[6], "evaluations");
        g.best_phenotype = r[7];
        out.push_back(std::move(g));
    }
    return out;
}

std::string bootstrap_csv(const std::string& problem, const PairComparison& pair)
{
    std::vector<CsvRow> rows;
    const auto& v = pair.distribution.values;
    for (std::size_t i = 0; i < v.size(); ++i)
        rows.push_back({problem, pair.label(), std::to_string(i), format_double(v[i])});
    return to_csv({"problem", "method_pair", "rep_index", "mean_diff"}, rows);
}

std::string quartiles_csv(const InitialisationComparison& c)
{
    std::vector<CsvRow> rows;
    for (const auto& p : c.pairs) {
        const auto& q = p.distribution.quartiles;
        rows.push_back({c.problem, p.label(), format_double(q.q1), format_double(q.median), format_double(q.q3),
                        p.distribution.significant ? "true" : "false"});
    }
    return to_csv({"problem", "method_pair", "q1", "median", "q3", "significant"}, rows);
}

std::string speedups_csv(const InitialisationComparison& c)
{
    std::vector<CsvRow> rows;
    for (const auto& s : c.samples)
        rows.push_back({s.problem, s.method, std::to_string(s.run_index), format_double(s.speedup)});
    return to_csv({"problem", "method", "run_index", "speedup"}, rows);
}

namespace {

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <typename T>
T config_number(std::string_view key, std::string_view value)
{
    T v{};
    const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
    if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
        throw ConfigError("bad value '" + std::string(value) + "' for " + std::string(key));
    return v;
}

} // namespace

void set_config_value(RunConfig& c, std::string_view key, std::string_view value)
{
    auto num = [&]<typename T>(T& field) { field = config_number<T>(key, value); };
    if (key == "population")
        num(c.population_size);
    else if (key == "generations")
        num(c.generations);
    else if (key == "initialisation")
        c.initialisation = parse_init_method(value);
    else if (key == "crossover_rate")
        num(c.crossover_rate);
    else if (key == "mutation_events")
        num(c.mutation_events);
    else if (key == "tournament_size")
        num(c.tournament_size);
    else if (key == "elitism")
        num(c.elitism_count);
    else if (key == "mode") {
        try {
            c.mode = parse_fitness_mode(value);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    } else if (key == "prng_seed")
        num(c.prng_seed);
    else if (key == "step_normalizer")
        num(c.budgets.step_normalizer);
    else if (key == "time_limit")
        num(c.budgets.time_limit_seconds);
    else if (key == "repetitions")
        num(c.budgets.repetitions);
    else if (key == "max_generated")
        num(c.max_generated);
    else if (key == "max_tree_depth_extra")
        num(c.max_tree_depth_extra);
    else if (key == "init_min_depth")
        num(c.init_min_depth);
    else if (key == "init_max_depth")
        num(c.init_max_depth);
    else if (key == "workers")
        num(c.workers);
    else if (key == "problem")
        c.problem = value;
    else if (key == "suite")
        c.suite_path = value;
    else if (key == "grammar")
        c.grammar_path = value;
    else
        throw ConfigError("unknown configuration key '" + std::string(key) + "'");
}

RunConfig parse_config(std::string_view text, RunConfig base)
{
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto nl = text.find('\n');
        auto line = trim(text.substr(0, nl));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (line.empty() || line.front() == '#')
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        try {
            set_config_value(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return base;
}

std::string config_to_text(const RunConfig& c)
{
    std::ostringstream out;
    out << "population = " << c.population_size << "\n"
        << "generations = " << c.generations << "\n"
        << "initialisation = " << to_string(c.initialisation) << "\n"
        << "crossover_rate = " << format_double(c.crossover_rate) << "\n"
        << "mutation_events = " << c.mutation_events << "\n"
        << "tournament_size = " << c.tournament_size << "\n"
        << "elitism = " << c.elitism_count << "\n"
        << "mode = " << to_string(c.mode) << "\n"
        << "prng_seed = " << c.prng_seed << "\n"
        << "step_normalizer = " << c.budgets.step_normalizer << "\n"
        << "time_limit = " << format_double(c.budgets.time_limit_seconds) << "\n"
        << "repetitions = " << c.budgets.repetitions << "\n"
        << "max_generated = " << c.max_generated << "\n"
        << "max_tree_depth_extra = " << c.max_tree_depth_extra << "\n"
        << "init_min_depth = " << c.init_min_depth << "\n"
        << "init_max_depth = " << c.init_max_depth << "\n"
        << "workers = " << c.workers << "\n";
    if (!c.problem.empty())
        out << "problem = " << c.problem << "\n";
    if (!c.suite_path.empty())
        out << "suite = " << c.suite_path << "\n";
    if (!c.grammar_path.empty())
        out << "grammar = " << c.grammar_path << "\n";
    return out.str();
}

} // namespace rxgi
