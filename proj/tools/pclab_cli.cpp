// pclab: command-line front end for the percolation experiments.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pclab/error.hpp"
#include "pclab/experiments.hpp"
#include "pclab/recursive_tree.hpp"
#include "pclab/rng.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

struct Flags
{
    std::map<std::string, double> values;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> workers;
    std::string config_path;
    std::string out_path;
    std::string format;
    std::string dump_path;
};

void add_flags(CLI::App& sub, Flags& flags)
{
    for (const auto& spec : pclab::experiment_parameters(sub.get_name())) {
        auto* option = sub.add_option_function<double>(
            "--" + spec.name, [&flags, name = spec.name](double value) { flags.values[name] = value; },
            spec.meaning + " (default " + CLI::detail::to_string(spec.fallback) + ")");
        option->type_name(spec.integer ? "INT" : "FLOAT");
    }
    sub.add_option("--seed", flags.seed, "base seed");
    sub.add_option("--workers", flags.workers, "OpenMP threads, 0 for the runtime default");
    sub.add_option("--config", flags.config_path, "JSON config file")->check(CLI::ExistingFile);
    sub.add_option("--out", flags.out_path, "output file (stdout when absent)");
    sub.add_option("--format", flags.format, "output format")->check(CLI::IsMember({"csv", "json"}));
}

pclab::ExperimentConfig build_config(const std::string& experiment, const Flags& flags)
{
    pclab::ExperimentConfig config;
    if (!flags.config_path.empty()) {
        config = pclab::load_config(flags.config_path);
        pclab::require(config.experiment.empty() || config.experiment == experiment, [&] {
            return "config names experiment '" + config.experiment + "' but the command is '" + experiment + "'";
        });
    }
    config.experiment = experiment;
    for (const auto& [name, value] : flags.values) {
        config.parameters[name] = value;
    }
    if (flags.seed) {
        config.seed = *flags.seed;
    }
    if (flags.workers) {
        config.workers = *flags.workers;
    }
    if (!flags.out_path.empty()) {
        config.output = flags.out_path;
    }
    if (!flags.format.empty()) {
        config.format = pclab::parse_format(flags.format);
    }
    return pclab::resolve(config);
}

void dump_tree(const pclab::ExperimentConfig& config, const std::string& path)
{
    const auto n = static_cast<std::size_t>(config.parameters.at("n"));
    const double p = 1.0 - config.parameters.at("c") / std::log(static_cast<double>(n));
    pclab::Stream rng(pclab::seed_for(config.seed, "dump"));
    const auto marked = pclab::build_marked(n, p, rng);
    std::ofstream out(path, std::ios::binary);
    pclab::require(static_cast<bool>(out), [&] { return "cannot write '" + path + "'"; });
    pclab::write_marked_tree(out, marked);
    out.flush();
    pclab::require(static_cast<bool>(out), [&] { return "write to '" + path + "' failed"; });
}

int run(const std::string& experiment, const Flags& flags)
{
    const auto config = build_config(experiment, flags);
    if (!flags.dump_path.empty()) {
        dump_tree(config, flags.dump_path);
    }
    const auto result = pclab::run_experiment(config);
    const auto text = pclab::render(result, config.format);
    if (config.output) {
        pclab::write_text(*config.output, text);
    }
    else {
        std::cout << text;
        std::cout.flush();
    }
    std::size_t failed = 0;
    for (const auto& verdict : result.report.verdicts) {
        if (!verdict.passed) {
            ++failed;
            std::fprintf(stderr, "FAIL %s: value %.6g, tolerance %.6g (%s)\n", verdict.check.c_str(), verdict.value,
                         verdict.tolerance, verdict.rule.c_str());
        }
    }
    std::fprintf(stderr, "%s: %zu verdicts, %zu failed\n", experiment.c_str(), result.report.verdicts.size(),
                 failed);
    return failed == 0 ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Bond percolation on random recursive trees: simulation and limit-law checks"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print this help and exit");
    app.set_help_all_flag("--help-all", "help for every subcommand");

    const std::map<std::string, std::string> about{
        {"giant", "root cluster of T_n: germ + Yule pipeline vs direct percolation"},
        {"germ", "disconnected vertices of T_k under q_k = 1 - c k^-1/4"},
        {"coupling", "Meir-Moon root isolation against the step walk"},
        {"ld", "Luria-Delbruck samplers and transforms"},
        {"clusters", "ranked cluster sizes and the number of large clusters"},
        {"urn", "urn equivalence for the disconnected count"},
        {"yule", "Yule embedding and tau statistics"},
        {"regular", "percolation on the d-regular tree"},
        {"check", "run the acceptance suite (all criteria or --criterion N)"},
    };

    Flags flags;
    std::string chosen;
    for (const auto& name : pclab::experiment_names()) {
        auto* sub = app.add_subcommand(name, about.count(name) ? about.at(name) : name);
        sub->set_help_flag("--help", "print this help and exit");
        add_flags(*sub, flags);
        if (name == "giant") {
            sub->add_option("--dump", flags.dump_path, "also write one marked tree at (n, p_n) in PCLB1 format");
        }
        sub->callback([&chosen, name] { chosen = name; });
    }

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::Success& e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        return run(chosen, flags);
    }
    catch (const pclab::DomainError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return kExitConfig;
    }
    catch (const nlohmann::json::exception& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return kExitConfig;
    }
    catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    }
}
