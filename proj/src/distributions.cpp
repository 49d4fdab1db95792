#include "pclab/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <math.h>

namespace pclab {
namespace {

double log_factorial(double k)
{
    int sign = 0;
    return ::lgamma_r(k + 1.0, &sign);
}

std::uint64_t poisson_inversion(Stream& rng, double mean)
{
    double u = rng.uniform();
    double prob = std::exp(-mean);
    std::uint64_t k = 0;
    // Terminates: the tail mass below 1e-300 is unreachable for mean < 10.
    while (u > prob && k < 1000) {
        u -= prob;
        ++k;
        prob *= mean / static_cast<double>(k);
    }
    return k;
}

std::uint64_t poisson_ptrs(Stream& rng, double mean)
{
    const double slam = std::sqrt(mean);
    const double loglam = std::log(mean);
    const double b = 0.931 + 2.53 * slam;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
        const double u = rng.uniform() - 0.5;
        const double v = rng.uniform();
        const double us = 0.5 - std::fabs(u);
        const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
        if (us >= 0.07 && v <= vr) {
            return static_cast<std::uint64_t>(k);
        }
        if (k < 0.0 || (us < 0.013 && v > us)) {
            continue;
        }
        if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b)
            <= -mean + k * loglam - log_factorial(k)) {
            return static_cast<std::uint64_t>(k);
        }
    }
}

std::uint64_t binomial_inversion(Stream& rng, std::uint64_t trials, double p)
{
    const double q = 1.0 - p;
    const double s = p / q;
    const double a = (static_cast<double>(trials) + 1.0) * s;
    double prob = std::exp(static_cast<double>(trials) * std::log1p(-p));
    double u = rng.uniform();
    std::uint64_t x = 0;
    while (u > prob && x < trials) {
        u -= prob;
        ++x;
        prob *= a / static_cast<double>(x) - s;
    }
    return x;
}

// Successes located by geometric gaps; O(mean) work, no underflow.
std::uint64_t binomial_geometric(Stream& rng, std::uint64_t trials, double p)
{
    const double log_q = std::log1p(-p);
    const double n = static_cast<double>(trials);
    double position = 0.0;
    std::uint64_t successes = 0;
    for (;;) {
        position += std::floor(std::log(rng.uniform()) / log_q) + 1.0;
        if (position > n) {
            return successes;
        }
        ++successes;
    }
}

}  // namespace

double sample_exponential(Stream& rng)
{
    return -std::log(rng.uniform());
}

double sample_normal(Stream& rng)
{
    const double radius = std::sqrt(-2.0 * std::log(rng.uniform()));
    return radius * std::cos(2.0 * std::numbers::pi * rng.uniform());
}

bool sample_bernoulli(Stream& rng, double p)
{
    return rng.uniform() < p;
}

std::uint64_t sample_poisson(Stream& rng, double mean)
{
    if (!(mean > 0.0)) {
        return 0;
    }
    if (mean < 10.0) {
        return poisson_inversion(rng, mean);
    }
    if (mean <= 1e9) {
        return poisson_ptrs(rng, mean);
    }
    const double x = std::floor(mean + std::sqrt(mean) * sample_normal(rng) + 0.5);
    return static_cast<std::uint64_t>(std::max(x, 0.0));
}

std::uint64_t sample_binomial(Stream& rng, std::uint64_t trials, double p)
{
    if (trials == 0 || p <= 0.0) {
        return 0;
    }
    if (p >= 1.0) {
        return trials;
    }
    if (p > 0.5) {
        return trials - sample_binomial(rng, trials, 1.0 - p);
    }
    const double n = static_cast<double>(trials);
    const double mean = n * p;
    if (mean < 30.0) {
        return binomial_inversion(rng, trials, p);
    }
    if (trials <= 100000) {
        return binomial_geometric(rng, trials, p);
    }
    const double sd = std::sqrt(mean * (1.0 - p));
    const double x = std::floor(mean + sd * sample_normal(rng) + 0.5);
    return static_cast<std::uint64_t>(std::clamp(x, 0.0, n));
}

}  // namespace pclab
