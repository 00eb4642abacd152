#pragma once

#include "rxgi/evolution.hpp"
#include "rxgi/fitness_report.hpp"
#include "rxgi/stats.hpp"
#include "rxgi/test_suite.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rxgi {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void to_json(nlohmann::json& j, const TestSuite& suite);
void from_json(const nlohmann::json& j, TestSuite& suite);
void to_json(nlohmann::json& j, const FitnessReport& report);
void from_json(const nlohmann::json& j, FitnessReport& report);
void to_json(nlohmann::json& j, const RunConfig& config);
void from_json(const nlohmann::json& j, RunConfig& config);
void to_json(nlohmann::json& j, const RunResult& result);
void from_json(const nlohmann::json& j, RunResult& result);

std::string suite_to_json(const TestSuite& suite);
/// Parses and validates a suite; throws IoError on malformed input.
TestSuite suite_from_json(std::string_view text);

std::string result_to_json(const RunResult& result);
RunResult result_from_json(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
/// Writes through a temporary file and renames, creating parent directories.
void write_text_file(const std::filesystem::path& path, std::string_view content);

// CSV (RFC 4180 quoting) -----------------------------------------------------

using CsvRow = std::vector<std::string>;

std::string csv_field(std::string_view text);
std::string format_double(double value); // shortest round-trip form
std::string to_csv(const CsvRow& header, const std::vector<CsvRow>& rows);
std::vector<CsvRow> parse_csv(std::string_view text);

/// generation,best_combined,best_error,best_cost,mean_combined,distinct,evaluations,best_phenotype
std::string generations_csv(const RunResult& result);
std::vector<GenerationRecord> generations_from_csv(std::string_view text);

/// problem,method_pair,rep_index,mean_diff
std::string bootstrap_csv(const std::string& problem, const PairComparison& pair);
/// problem,method_pair,q1,median,q3,significant
std::string quartiles_csv(const InitialisationComparison& comparison);
/// problem,method,run_index,speedup
std::string speedups_csv(const InitialisationComparison& comparison);

// Run configuration files --------------------------------------------------

/// Applies `key = value` lines (`#` comments, blank lines allowed) on top of
/// `base`. Unknown keys and malformed values throw ConfigError naming the
/// line.
RunConfig parse_config(std::string_view text, RunConfig base = {});
std::string config_to_text(const RunConfig& config);

/// Sets one configuration key from its textual value.
void set_config_value(RunConfig& config, std::string_view key, std::string_view value);

} // namespace rxgi
