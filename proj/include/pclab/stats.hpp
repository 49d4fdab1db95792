#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace pclab::stats {

struct MeanEstimate
{
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t count = 0;

    //! |mean - target| <= sigmas * std_error.
    bool within(double target, double sigmas = 4.0) const;
};

MeanEstimate mean_estimate(std::span<const double> values);

struct KsResult
{
    double statistic = 0.0;
    double p_value = 1.0;
    std::size_t n1 = 0;
    std::size_t n2 = 0;  // 0 for one-sample tests
};

//! Q_KS(lambda) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lambda^2).
double kolmogorov_survival(double lambda);

//! Two-sample statistic sup |F1 - F2|, exact for tied (discrete) data; the
//! p-value uses the asymptotic law with Stephens' effective-size correction.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

KsResult ks_one_sample(std::span<const double> samples, const std::function<double(double)>& cdf);

//! Upper tail of the chi-square distribution.
double chi_square_survival(double statistic, double dof);

struct Summary
{
    std::size_t count = 0;
    std::vector<double> quantiles;  // at kQuantileLevels
    double trimmed_mean = 0.0;      // 10% trimmed on each side
};

inline constexpr double kQuantileLevels[] = {0.01, 0.05, 0.25, 0.50, 0.75, 0.95, 0.99};

Summary summarize(std::span<const double> values);

//! Type-7 (linear interpolation) sample quantile.
double quantile(std::vector<double> values, double level);

struct TransformPoint
{
    double argument = 0.0;
    std::complex<double> empirical;
    std::complex<double> theoretical;
    std::complex<double> std_error;  // per component

    bool within(double sigmas = 4.0) const;
};

//! Empirical characteristic function E exp(i theta X).
TransformPoint ecf_point(std::span<const double> values, double theta,
                         std::complex<double> theoretical);

//! Empirical E g(X) for a real transform g (Laplace, generating function).
TransformPoint real_transform_point(std::span<const double> values, double argument,
                                    const std::function<double(double)>& g, double theoretical);

}  // namespace pclab::stats
