#include "pclab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "pclab/error.hpp"

namespace pclab::stats {

bool MeanEstimate::within(double target, double sigmas) const
{
    return std::fabs(mean - target) <= sigmas * std_error;
}

MeanEstimate mean_estimate(std::span<const double> values)
{
    require(!values.empty(), "mean of an empty sample");
    // Two-pass for stability with large offsets.
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    const double n = static_cast<double>(values.size());
    const double mean = sum / n;
    double squares = 0.0;
    for (double v : values) {
        squares += (v - mean) * (v - mean);
    }
    const double variance = values.size() > 1 ? squares / (n - 1.0) : 0.0;
    return {mean, std::sqrt(variance / n), values.size()};
}

double kolmogorov_survival(double lambda)
{
    if (lambda <= 0.0) {
        return 1.0;
    }
    if (lambda < 1.18) {
        // Jacobi-transformed series converges fast for small lambda.
        const double y = std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
        double sum = 0.0;
        for (int j = 1; j <= 20; ++j) {
            const double odd = 2.0 * j - 1.0;
            sum += std::exp(-odd * odd * y);
        }
        return std::clamp(1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * sum, 0.0, 1.0);
    }
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += sign * term;
        if (term < 1e-300) {
            break;
        }
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

double corrected_p_value(double statistic, double effective_size)
{
    const double root = std::sqrt(effective_size);
    return kolmogorov_survival((root + 0.12 + 0.11 / root) * statistic);
}

}  // namespace

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b)
{
    require(!a.empty() && !b.empty(), "two-sample test needs nonempty samples");
    std::vector<double> x(a.begin(), a.end());
    std::vector<double> y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double nx = static_cast<double>(x.size());
    const double ny = static_cast<double>(y.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        // Step past every copy of the smaller value in both samples.
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] == v) {
            ++i;
        }
        while (j < y.size() && y[j] == v) {
            ++j;
        }
        d = std::max(d, std::fabs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
    }
    KsResult result;
    result.statistic = d;
    result.n1 = x.size();
    result.n2 = y.size();
    result.p_value = corrected_p_value(d, nx * ny / (nx + ny));
    return result;
}

KsResult ks_one_sample(std::span<const double> samples, const std::function<double(double)>& cdf)
{
    require(!samples.empty(), "one-sample test needs a nonempty sample");
    std::vector<double> x(samples.begin(), samples.end());
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = cdf(x[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    KsResult result;
    result.statistic = d;
    result.n1 = x.size();
    result.p_value = corrected_p_value(d, n);
    return result;
}

double chi_square_survival(double statistic, double dof)
{
    require(dof > 0.0, "chi-square needs positive degrees of freedom");
    if (statistic <= 0.0) {
        return 1.0;
    }
    return boost::math::gamma_q(dof / 2.0, statistic / 2.0);
}

double quantile(std::vector<double> values, double level)
{
    require(!values.empty(), "quantile of an empty sample");
    require(level >= 0.0 && level <= 1.0, "quantile level must lie in [0, 1]");
    std::sort(values.begin(), values.end());
    const double position = level * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(position));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = position - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

Summary summarize(std::span<const double> values)
{
    Summary summary;
    summary.count = values.size();
    if (values.empty()) {
        return summary;
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double last = static_cast<double>(sorted.size() - 1);
    for (double level : kQuantileLevels) {
        const double position = level * last;
        const auto lo = static_cast<std::size_t>(std::floor(position));
        const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
        summary.quantiles.push_back(sorted[lo] + (position - lo) * (sorted[hi] - sorted[lo]));
    }
    const std::size_t cut = sorted.size() / 10;
    double sum = 0.0;
    for (std::size_t i = cut; i < sorted.size() - cut; ++i) {
        sum += sorted[i];
    }
    summary.trimmed_mean = sum / static_cast<double>(sorted.size() - 2 * cut);
    return summary;
}

bool TransformPoint::within(double sigmas) const
{
    const auto diff = empirical - theoretical;
    return std::fabs(diff.real()) <= sigmas * std_error.real()
           && std::fabs(diff.imag()) <= sigmas * std_error.imag();
}

TransformPoint ecf_point(std::span<const double> values, double theta,
                         std::complex<double> theoretical)
{
    std::vector<double> re;
    std::vector<double> im;
    re.reserve(values.size());
    im.reserve(values.size());
    for (double v : values) {
        re.push_back(std::cos(theta * v));
        im.push_back(std::sin(theta * v));
    }
    const auto re_est = mean_estimate(re);
    const auto im_est = mean_estimate(im);
    return {theta, {re_est.mean, im_est.mean}, theoretical, {re_est.std_error, im_est.std_error}};
}

TransformPoint real_transform_point(std::span<const double> values, double argument,
                                    const std::function<double(double)>& g, double theoretical)
{
    std::vector<double> mapped;
    mapped.reserve(values.size());
    for (double v : values) {
        mapped.push_back(g(v));
    }
    const auto est = mean_estimate(mapped);
    return {argument, {est.mean, 0.0}, {theoretical, 0.0}, {est.std_error, 0.0}};
}

}  // namespace pclab::stats
