#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "pclab/acceptance.hpp"
#include "pclab/error.hpp"
#include "pclab/experiments.hpp"
#include "pclab/recursive_tree.hpp"
#include "pclab/root_isolation.hpp"
#include "pclab/stats.hpp"

using namespace pclab;

namespace {

ExperimentConfig config_of(const std::string& experiment, std::map<std::string, double> parameters,
                           std::uint64_t seed = 1, std::size_t workers = 0)
{
    ExperimentConfig config;
    config.experiment = experiment;
    config.parameters = std::move(parameters);
    config.seed = seed;
    config.workers = workers;
    return config;
}

}  // namespace

TEST(Config, ParsesEveryKey)
{
    const auto config = parse_config_json(R"({"experiment": "germ", "seed": 7, "workers": 2, "out": "g.csv",
                                              "format": "csv", "parameters": {"k": 500, "c": 0.5}})");
    EXPECT_EQ(config.experiment, "germ");
    EXPECT_EQ(config.seed, 7u);
    EXPECT_EQ(config.workers, 2u);
    EXPECT_EQ(config.output->string(), "g.csv");
    EXPECT_EQ(config.format, OutputFormat::csv);
    EXPECT_EQ(config.parameters.at("k"), 500.0);
}

TEST(Config, RejectsUnknownAndMalformedKeys)
{
    EXPECT_THROW(parse_config_json(R"({"experiment": "germ", "colour": 1})"), DomainError);
    EXPECT_THROW(parse_config_json(R"({"experiment": "germ", "seed": -1})"), DomainError);
    EXPECT_THROW(parse_config_json(R"({"experiment": "germ", "parameters": {"k": "big"}})"), DomainError);
    EXPECT_THROW(parse_config_json(R"({"experiment": "germ", "format": "xml"})"), DomainError);
    EXPECT_THROW(parse_config_json(R"([1, 2])"), DomainError);
    EXPECT_ANY_THROW(parse_config_json("{not json"));
    EXPECT_THROW(load_config("/nonexistent/pclab.json"), DomainError);
}

TEST(Config, ResolveFillsDefaultsAndChecksValues)
{
    const auto resolved = resolve(config_of("germ", {{"k", 2000}}));
    for (const auto& spec : experiment_parameters("germ")) {
        EXPECT_TRUE(resolved.parameters.count(spec.name)) << spec.name;
    }
    EXPECT_EQ(resolved.parameters.at("k"), 2000.0);
    EXPECT_THROW(resolve(config_of("germ", {{"h", 3}})), DomainError);
    EXPECT_THROW(resolve(config_of("germ", {{"k", 10.5}})), DomainError);
    EXPECT_THROW(resolve(config_of("germ", {{"replicas", 0}})), DomainError);
    EXPECT_THROW(resolve(config_of("giant", {{"n", 10}, {"c", 5}})), DomainError);
    EXPECT_THROW(resolve(config_of("check", {{"criterion", 14}})), DomainError);
    EXPECT_THROW(resolve(config_of("bogus", {})), DomainError);
    EXPECT_THROW(resolve(config_of("", {})), DomainError);
}

TEST(Config, NamesMatchSubcommands)
{
    const std::vector<std::string> expected{"giant", "germ",    "coupling", "ld",   "clusters",
                                            "urn",   "yule",    "regular",  "check"};
    auto names = experiment_names();
    std::sort(names.begin(), names.end());
    auto sorted = expected;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(names, sorted);
}

TEST(Experiments, SingleReplicaIsReproducible)
{
    for (const auto& name : experiment_names()) {
        if (name == "check") {
            continue;
        }
        const auto a = run_replicas(config_of(name, {{"replicas", 1}}, 3));
        const auto b = run_replicas(config_of(name, {{"replicas", 1}}, 3));
        ASSERT_EQ(a.size(), 1u) << name;
        EXPECT_EQ(samples_to_csv(a), samples_to_csv(b)) << name;
    }
}

TEST(Experiments, WorkerCountDoesNotChangeBytes)
{
    for (const auto& name : experiment_names()) {
        if (name == "check") {
            continue;
        }
        const auto one = run_experiment(config_of(name, {{"replicas", 4}}, 5, 1));
        const auto four = run_experiment(config_of(name, {{"replicas", 4}}, 5, 4));
        EXPECT_EQ(render(one, OutputFormat::csv), render(four, OutputFormat::csv)) << name;
        EXPECT_EQ(render(one, OutputFormat::json), render(four, OutputFormat::json)) << name;
    }
}

TEST(Experiments, GermMeanMatchesExactFormula)
{
    const auto samples = run_replicas(config_of("germ", {{"k", 10000}, {"c", 1}, {"replicas", 1000}}, 11));
    ASSERT_EQ(samples.size(), 1000u);
    const auto spec = GermSpec::standalone(10000, 1.0);
    const double target = 10000.0 * (1.0 - exact_mean_root_fraction(10000, spec.survival()));
    EXPECT_TRUE(stats::mean_estimate(samples.column("delta_clock")).within(target));
    EXPECT_TRUE(stats::mean_estimate(samples.column("delta_direct")).within(target));
}

TEST(Experiments, ReportEchoesConfigAndHasVerdicts)
{
    const auto result = run_experiment(config_of("urn", {{"n", 300}, {"replicas", 500}}, 12));
    EXPECT_EQ(result.report.config["experiment"], "urn");
    EXPECT_EQ(result.report.config["parameters"]["n"], 300.0);
    EXPECT_EQ(result.report.config["seed"], 12u);
    EXPECT_FALSE(result.report.verdicts.empty());
    EXPECT_TRUE(result.report.passed());
    const auto json = nlohmann::json::parse(render(result, OutputFormat::json));
    EXPECT_EQ(json["config"], result.report.config);
}

TEST(Experiments, CsvUsesSeventeenDigits)
{
    const auto result = run_experiment(config_of("ld", {{"m", 1}, {"replicas", 20}}, 13));
    const auto csv = render(result, OutputFormat::csv);
    const auto back = samples_from_csv(csv);
    EXPECT_EQ(back.rows, result.samples.rows);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "z_discrete,z_stable,z_scaled");
}

TEST(Experiments, CheckRunsOneCriterion)
{
    const auto result = run_experiment(config_of("check", {{"criterion", 9}}, 1));
    ASSERT_EQ(result.samples.size(), 1u);
    EXPECT_EQ(result.samples.rows[0][0], 9.0);
    EXPECT_TRUE(result.report.passed());
    for (const auto& verdict : result.report.verdicts) {
        EXPECT_EQ(verdict.check.rfind("9: ", 0), 0u) << verdict.check;
    }
}

TEST(Acceptance, TitlesExistForEveryCriterion)
{
    for (int id = 1; id <= kCriterionCount; ++id) {
        EXPECT_FALSE(criterion_title(id).empty());
    }
    EXPECT_THROW(run_criterion(13, 1, 1), DomainError);
}
