#pragma once

#include <complex>
#include <filesystem>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "pclab/replicas.hpp"
#include "pclab/stats.hpp"

namespace pclab {

struct Verdict
{
    std::string check;
    bool passed = false;
    double value = 0.0;      // the quantity that was tested
    double tolerance = 0.0;  // the bound it was tested against
    std::string rule;        // how value and tolerance relate
};

struct TransformGrid
{
    std::string name;
    std::vector<stats::TransformPoint> points;
};

struct NamedDistance
{
    std::string name;
    stats::KsResult ks;
};

struct ComparisonReport
{
    nlohmann::json config;
    std::map<std::string, stats::Summary> sample_summary;
    std::vector<TransformGrid> transform_grids;
    std::vector<NamedDistance> distances;
    std::vector<Verdict> verdicts;

    bool passed() const;
    void merge(const ComparisonReport& other);
};

//! Analytic reference for transform-mode comparison.
struct TransformSpec
{
    enum class Kind { characteristic, laplace, generating };
    Kind kind = Kind::characteristic;
    std::string name;
    std::vector<double> grid;
    //! Theoretical value at a grid point (imaginary part ignored for real transforms).
    std::function<std::complex<double>(double)> theoretical;
};

inline constexpr double kTwoSampleLevel = 1e-3;
inline constexpr double kStandardErrors = 4.0;

/*!
 * Transform mode: empirical transform on the grid with standard errors and
 * one verdict per point (within 4 standard errors). Two-sample mode: KS
 * statistic and a verdict that the p-value is at least 1e-3.
 */
ComparisonReport compare(const std::string& name, std::span<const double> samples,
                         const TransformSpec& reference);
ComparisonReport compare(const std::string& name, std::span<const double> samples,
                         std::span<const double> reference);

Verdict mean_verdict(const std::string& check, const stats::MeanEstimate& estimate, double target,
                     double sigmas = kStandardErrors);

nlohmann::json to_json(const ComparisonReport& report);

//! Header row, then one row per replica, values as %.17g, '\n' terminated.
std::string samples_to_csv(const SampleSet& samples);
SampleSet samples_from_csv(const std::string& text);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace pclab
