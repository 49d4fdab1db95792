// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.
//
//   pclab_acceptance [--seed S] [--workers W] [--only 1,2,...] [--report path]

#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "pclab/acceptance.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"acceptance suite"};
    pclab::SuiteOptions options;
    std::string report_path;
    app.add_option("--seed", options.seed, "suite seed");
    app.add_option("--workers", options.workers, "replica workers (0 = OpenMP default)");
    app.add_option("--only", options.only, "criteria to run")->delimiter(',');
    app.add_option("--report", report_path, "write the JSON report here");
    CLI11_PARSE(app, argc, argv);

    try {
        const auto outcomes = pclab::run_acceptance(options, [](const pclab::CriterionOutcome& o, double seconds) {
            std::size_t failed = 0;
            for (const auto& v : o.report.verdicts) {
                failed += !v.passed;
            }
            std::printf("criterion %2d %s  %s  (%zu checks, %zu failed, %.1fs)\n", o.id, o.passed() ? "PASS" : "FAIL",
                        o.title.c_str(), o.report.verdicts.size(), failed, seconds);
            for (const auto& v : o.report.verdicts) {
                if (!v.passed) {
                    std::printf("    failed: %s  value=%.17g tolerance=%.17g (%s)\n", v.check.c_str(), v.value,
                                v.tolerance, v.rule.c_str());
                }
            }
            std::fflush(stdout);
        });
        if (!report_path.empty()) {
            std::ofstream(report_path) << pclab::to_json(outcomes).dump(2) << "\n";
        }
        bool all = true;
        for (const auto& o : outcomes) {
            all = all && o.passed();
        }
        std::printf("%s\n", all ? "all criteria passed" : "some criteria failed");
        return all ? 0 : 1;
    }
    catch (const std::exception& error) {
        std::fprintf(stderr, "error: %s\n", error.what());
        return 2;
    }
}
