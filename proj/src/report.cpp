#include "pclab/report.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "pclab/error.hpp"

namespace pclab {

bool ComparisonReport::passed() const
{
    for (const auto& verdict : verdicts) {
        if (!verdict.passed) {
            return false;
        }
    }
    return true;
}

void ComparisonReport::merge(const ComparisonReport& other)
{
    for (const auto& [key, summary] : other.sample_summary) {
        sample_summary[key] = summary;
    }
    transform_grids.insert(transform_grids.end(), other.transform_grids.begin(),
                           other.transform_grids.end());
    distances.insert(distances.end(), other.distances.begin(), other.distances.end());
    verdicts.insert(verdicts.end(), other.verdicts.begin(), other.verdicts.end());
}

ComparisonReport compare(const std::string& name, std::span<const double> samples,
                         const TransformSpec& reference)
{
    require(!samples.empty(), "compare needs a nonempty sample");
    require(!reference.grid.empty(), "transform comparison needs a nonempty grid");
    ComparisonReport report;
    report.sample_summary[name] = stats::summarize(samples);
    TransformGrid grid{reference.name, {}};
    for (double arg : reference.grid) {
        const auto target = reference.theoretical(arg);
        stats::TransformPoint point;
        switch (reference.kind) {
            case TransformSpec::Kind::characteristic:
                point = stats::ecf_point(samples, arg, target);
                break;
            case TransformSpec::Kind::laplace:
                point = stats::real_transform_point(
                    samples, arg, [arg](double x) { return std::exp(-arg * x); }, target.real());
                break;
            case TransformSpec::Kind::generating:
                point = stats::real_transform_point(
                    samples, arg, [arg](double x) { return std::pow(arg, x); }, target.real());
                break;
        }
        const double deviation = std::abs(point.empirical - point.theoretical);
        report.verdicts.push_back({reference.name + "@" + std::to_string(arg), point.within(kStandardErrors),
                                   deviation, kStandardErrors * std::abs(point.std_error),
                                   "each component within 4 standard errors"});
        grid.points.push_back(point);
    }
    report.transform_grids.push_back(std::move(grid));
    return report;
}

ComparisonReport compare(const std::string& name, std::span<const double> samples,
                         std::span<const double> reference)
{
    require(!samples.empty() && !reference.empty(), "compare needs nonempty samples");
    ComparisonReport report;
    report.sample_summary[name] = stats::summarize(samples);
    const auto ks = stats::ks_two_sample(samples, reference);
    report.distances.push_back({name, ks});
    report.verdicts.push_back({name + ":two_sample", ks.p_value >= kTwoSampleLevel, ks.p_value,
                               kTwoSampleLevel, "KS p-value >= level"});
    return report;
}

Verdict mean_verdict(const std::string& check, const stats::MeanEstimate& estimate, double target,
                     double sigmas)
{
    return {check, estimate.within(target, sigmas), std::fabs(estimate.mean - target),
            sigmas * estimate.std_error, "|mean - target| <= 4 standard errors"};
}

namespace {

nlohmann::json complex_json(std::complex<double> z)
{
    return nlohmann::json::array({z.real(), z.imag()});
}

}  // namespace

nlohmann::json to_json(const ComparisonReport& report)
{
    nlohmann::json out;
    out["config"] = report.config;
    nlohmann::json summaries = nlohmann::json::object();
    for (const auto& [key, summary] : report.sample_summary) {
        nlohmann::json q = nlohmann::json::object();
        for (std::size_t i = 0; i < summary.quantiles.size(); ++i) {
            q[std::to_string(static_cast<int>(std::lround(stats::kQuantileLevels[i] * 100)))] =
                summary.quantiles[i];
        }
        summaries[key] = {{"count", summary.count}, {"quantiles", q}, {"trimmed_mean", summary.trimmed_mean}};
    }
    out["sample_summary"] = summaries;
    nlohmann::json grids = nlohmann::json::array();
    for (const auto& grid : report.transform_grids) {
        nlohmann::json points = nlohmann::json::array();
        for (const auto& p : grid.points) {
            points.push_back({{"argument", p.argument},
                              {"empirical", complex_json(p.empirical)},
                              {"theoretical", complex_json(p.theoretical)},
                              {"std_error", complex_json(p.std_error)}});
        }
        grids.push_back({{"name", grid.name}, {"points", points}});
    }
    out["transform_grids"] = grids;
    nlohmann::json distances = nlohmann::json::array();
    for (const auto& d : report.distances) {
        distances.push_back({{"name", d.name},
                             {"ks_statistic", d.ks.statistic},
                             {"p_value", d.ks.p_value},
                             {"n1", d.ks.n1},
                             {"n2", d.ks.n2}});
    }
    out["distances"] = distances;
    nlohmann::json verdicts = nlohmann::json::array();
    for (const auto& v : report.verdicts) {
        verdicts.push_back({{"check", v.check},
                            {"passed", v.passed},
                            {"value", v.value},
                            {"tolerance", v.tolerance},
                            {"rule", v.rule}});
    }
    out["verdicts"] = verdicts;
    out["passed"] = report.passed();
    return out;
}

std::string samples_to_csv(const SampleSet& samples)
{
    std::string out;
    for (std::size_t i = 0; i < samples.columns.size(); ++i) {
        out += (i ? "," : "") + samples.columns[i];
    }
    out += '\n';
    char buffer[64];
    for (const auto& row : samples.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            std::snprintf(buffer, sizeof buffer, "%.17g", row[i]);
            if (i) {
                out += ',';
            }
            out += buffer;
        }
        out += '\n';
    }
    return out;
}

SampleSet samples_from_csv(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    SampleSet out;
    require(static_cast<bool>(std::getline(in, line)), "CSV has no header row");
    {
        std::istringstream header(line);
        std::string name;
        while (std::getline(header, name, ',')) {
            out.columns.push_back(name);
        }
    }
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<double> row;
        std::istringstream fields(line);
        std::string field;
        while (std::getline(fields, field, ',')) {
            errno = 0;
            char* end = nullptr;
            const double value = std::strtod(field.c_str(), &end);
            require(errno == 0 && end != field.c_str() && *end == '\0', "malformed CSV value '" + field + "'");
            row.push_back(value);
        }
        require(row.size() == out.columns.size(), "CSV row width does not match header");
        out.rows.push_back(std::move(row));
    }
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing: " + std::strerror(errno));
    }
    out << text;
    out.flush();
    if (!out) {
        throw std::runtime_error("failed writing '" + path.string() + "'");
    }
}

}  // namespace pclab
