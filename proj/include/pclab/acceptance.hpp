#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pclab/report.hpp"

namespace pclab {

struct SuiteOptions
{
    std::uint64_t seed = 1;
    std::size_t workers = 0;
    //! Criteria to run (1..13); empty runs all of them.
    std::vector<int> only;
};

struct CriterionOutcome
{
    int id = 0;
    std::string title;
    ComparisonReport report;

    bool passed() const { return report.passed(); }
};

inline constexpr int kCriterionCount = 13;

const std::string& criterion_title(int id);

//! Runs one criterion (1..12). Criterion 13 needs the whole suite; see run_acceptance.
CriterionOutcome run_criterion(int id, std::uint64_t seed, std::size_t workers);

using ProgressFn = std::function<void(const CriterionOutcome&, double seconds)>;

/*!
 * Runs the selected criteria in order. Criterion 13 reruns every other
 * selected criterion with a different worker count and requires
 * byte-identical reports, then checks each named experiment at 4 replicas
 * with 1 and 4 workers.
 */
std::vector<CriterionOutcome> run_acceptance(const SuiteOptions& options, const ProgressFn& progress = {});

nlohmann::json to_json(const std::vector<CriterionOutcome>& outcomes);

}  // namespace pclab
