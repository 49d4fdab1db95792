#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pclab/replicas.hpp"
#include "pclab/report.hpp"

namespace pclab {

enum class OutputFormat { csv, json };

OutputFormat parse_format(const std::string& text);
const char* to_string(OutputFormat format);

/*!
 * One named experiment with its scalar parameters.
 *
 * As a JSON document:
 *   {"experiment": "germ", "seed": 7, "workers": 1, "out": "germ.json",
 *    "format": "json", "parameters": {"k": 10000, "c": 1, "replicas": 1000}}
 * Every key is optional except "experiment"; unknown keys are rejected at
 * both levels.
 */
struct ExperimentConfig
{
    std::string experiment;
    std::map<std::string, double> parameters;
    std::uint64_t seed = 1;
    std::size_t workers = 0;  // 0 = OpenMP default
    std::optional<std::filesystem::path> output;
    OutputFormat format = OutputFormat::json;
};

const std::vector<std::string>& experiment_names();

struct ParameterSpec
{
    std::string name;
    double fallback = 0.0;
    bool integer = false;
    double minimum = 0.0;
    std::string meaning;
};

//! Accepted parameters of a named experiment, with their defaults.
const std::vector<ParameterSpec>& experiment_parameters(const std::string& experiment);

ExperimentConfig parse_config_json(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const ExperimentConfig& config);

//! Defaults filled in and every value checked; throws DomainError naming the offending key.
ExperimentConfig resolve(const ExperimentConfig& config);

struct ExperimentResult
{
    ExperimentConfig config;  // resolved
    SampleSet samples;
    ComparisonReport report;
};

//! Per-replica samples only; replica r draws from Stream(seed).split(r).
SampleSet run_replicas(const ExperimentConfig& config);

//! Samples plus the comparisons and verdicts of the experiment.
ExperimentResult run_experiment(const ExperimentConfig& config);

//! CSV renders the samples, JSON renders the report.
std::string render(const ExperimentResult& result, OutputFormat format);

}  // namespace pclab
