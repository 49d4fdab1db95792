#include "pclab/regular_tree.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pclab/distributions.hpp"
#include "pclab/error.hpp"

namespace pclab {
namespace {

constexpr std::uint64_t kExactLimit = std::uint64_t{1} << 53;

// e^{-y} - 1 + y without cancellation for small y.
double compensated_expm1(double y)
{
    if (y < 1e-4) {
        return y * y * (0.5 - y / 6.0 + y * y / 24.0);
    }
    return std::expm1(-y) + y;
}

}  // namespace

void RegularParams::validate() const
{
    require(d >= 2, "degree d must be at least 2");
    require(h >= 1, "height h must be at least 1");
    require(c >= 0.0, "c must be nonnegative");
}

double RegularParams::survival() const
{
    return std::exp(-c / static_cast<double>(h));
}

double RegularParams::removal() const
{
    return -std::expm1(-c / static_cast<double>(h));
}

std::size_t floor_log(unsigned d, std::size_t h)
{
    require(d >= 2 && h >= 1, "floor_log needs d >= 2 and h >= 1");
    std::size_t result = 0;
    std::size_t power = d;
    while (power <= h) {
        ++result;
        if (power > h / d) {
            break;
        }
        power *= d;
    }
    return result;
}

double RegularParams::phase() const
{
    validate();
    const std::size_t whole = floor_log(d, h);
    double power = 1.0;
    for (std::size_t i = 0; i < whole; ++i) {
        power *= d;
    }
    // log_d(h / d^whole) lies in [0, 1).
    const double frac = std::log(static_cast<double>(h) / power) / std::log(static_cast<double>(d));
    return std::clamp(frac, 0.0, std::nextafter(1.0, 0.0));
}

double LevelCounts::disconnected_fraction(std::size_t level) const
{
    require(level < levels(), [level] { return "level " + std::to_string(level) + " was not simulated"; });
    return 1.0 - connected_fraction[level];
}

LevelCounts simulate_levels(const RegularParams& params, std::size_t kmax, Stream& rng,
                            bool with_sigma)
{
    params.validate();
    require(kmax <= params.h, "level bound kmax must not exceed h");
    const double q = params.survival();
    const double r = params.removal();
    const std::uint64_t d = params.d;

    LevelCounts out;
    out.d = params.d;
    out.connected_fraction.reserve(kmax + 1);
    out.connected_fraction.push_back(1.0);
    out.connected.push_back(1);
    out.disconnected.push_back(0);
    if (with_sigma) {
        out.sigma.push_back(0);
    }

    if (with_sigma) {
        std::uint64_t top = 1;
        for (std::size_t j = 0; j < kmax; ++j) {
            require(top <= kExactLimit / d, [kmax] {
                return "joint sigma is only available while d^k <= 2^53; requested kmax = " + std::to_string(kmax);
            });
            top *= d;
        }
    }

    std::uint64_t power = 1;  // d^j while exact
    const double log_d = std::log(static_cast<double>(d));
    const double shrink = 1.0 / std::sqrt(static_cast<double>(d));
    double noise = -1.0;  // sqrt(q r) d^{-(j+1)/2} once the exact levels end
    bool quiet = false;
    for (std::size_t j = 0; j < kmax; ++j) {
        const bool exact = out.exact_levels() == j + 1 && power <= kExactLimit / d;
        if (exact) {
            const std::uint64_t w = out.connected.back();
            const std::uint64_t nabla = out.disconnected.back();
            const std::uint64_t next = sample_binomial(rng, d * w, q);
            power *= d;
            out.connected.push_back(next);
            out.disconnected.push_back(power - next);
            out.connected_fraction.push_back(static_cast<double>(next) / static_cast<double>(power));
            if (with_sigma) {
                const std::uint64_t removed = (d * w - next) + sample_binomial(rng, d * nabla, r);
                out.sigma.push_back(d * out.sigma.back() + removed);
            }
        }
        else {
            const double x = out.connected_fraction.back();
            double next = q * x;
            // The relative noise only shrinks from here on, so once it drops
            // below double resolution the rest of the path is deterministic.
            if (!quiet) {
                noise = noise < 0.0 ? std::sqrt(q * r) * std::exp(-0.5 * static_cast<double>(j + 1) * log_d)
                                    : noise * shrink;
                const double sd = noise * std::sqrt(x);
                if (sd > 1e-18 * next) {
                    next += sd * sample_normal(rng);
                }
                else {
                    quiet = true;
                }
            }
            out.connected_fraction.push_back(std::max(next, 0.0));
        }
    }
    return out;
}

double sigma_sample(const RegularParams& params, std::size_t k, Stream& rng)
{
    params.validate();
    require(k >= 1, "sigma needs k >= 1");
    const double d = params.d;
    require(static_cast<double>(k) * std::log(d) < 700.0, "d^k is not representable in double precision");
    const double r = params.removal();
    double total = 0.0;
    double trials = 1.0;
    for (std::size_t l = 1; l <= k; ++l) {
        trials *= d;
        double removed = 0.0;
        if (trials <= 9.0e18) {
            removed = static_cast<double>(sample_binomial(rng, static_cast<std::uint64_t>(trials), r));
        }
        else {
            const double mean = trials * r;
            removed = std::max(0.0, std::floor(mean + std::sqrt(mean * (1.0 - r)) * sample_normal(rng) + 0.5));
        }
        total = total * d + removed;
    }
    return total;
}

ExpectedCounts expected_counts(const RegularParams& params, std::size_t k)
{
    params.validate();
    const double dk = std::pow(static_cast<double>(params.d), static_cast<double>(k));
    const double h = static_cast<double>(params.h);
    const double kd = static_cast<double>(k);
    return {dk * -std::expm1(-params.c * kd / h), kd * dk * params.removal()};
}

double lambda_bar(unsigned d, double b, double x)
{
    require(d >= 2, "degree d must be at least 2");
    require(b >= 0.0 && b < 1.0, "phase b must lie in [0, 1)");
    require(x > 0.0, "lambda_bar needs x > 0");
    double y = b - std::log(x) / std::log(static_cast<double>(d));
    // Snap rounding noise at the jump points x = d^{b-i}.
    const double nearest = std::round(y);
    if (std::fabs(y - nearest) < 1e-12) {
        y = nearest;
    }
    return std::pow(static_cast<double>(d), std::floor(y) + 1.0) / (d - 1.0);
}

double psi(unsigned d, double b, double a)
{
    require(d >= 2, "degree d must be at least 2");
    require(b >= 0.0 && b < 1.0, "phase b must lie in [0, 1)");
    require(a >= 0.0, "psi needs a >= 0");
    if (a == 0.0) {
        return 0.0;
    }
    const double dd = d;
    constexpr double kTailBudget = 1e-12;
    // i >= 1 (atoms below 1): term <= a^2 d^{2b-i} / 2, tail past I is
    // a^2 d^{2b} d^{-I} / (2(d-1)).
    int upper = 1;
    while (a * a * std::pow(dd, 2.0 * b - upper) / (2.0 * (dd - 1.0)) > kTailBudget) {
        ++upper;
    }
    // i <= 0 (atoms at or above 1): |term| <= d^i, tail below -J is d^{-J}/(d-1).
    int lower = 0;
    while (std::pow(dd, lower) / (dd - 1.0) > kTailBudget) {
        --lower;
    }
    double sum = 0.0;
    for (int i = upper; i >= 1; --i) {
        const double x = std::pow(dd, b - i);
        sum += std::pow(dd, i) * compensated_expm1(a * x);
    }
    for (int i = lower; i <= 0; ++i) {
        const double x = std::pow(dd, b - i);
        sum += std::pow(dd, i) * std::expm1(-a * x);
    }
    return sum;
}

double kappa(unsigned d, std::size_t k, std::size_t h, double c, double a)
{
    require(d >= 2, "degree d must be at least 2");
    require(k >= 1 && h >= 1, "kappa needs k, h >= 1");
    require(c >= 0.0 && a >= 0.0, "kappa needs c, a >= 0");
    const double hd = static_cast<double>(h);
    const double removal = -std::expm1(-c / hd);
    double sum = 0.0;
    double power = 1.0;
    for (std::size_t l = 1; l <= k; ++l) {
        power *= d;
        const double fired = -std::expm1(-a * hd / power);
        sum += power * std::log1p(-removal * fired);
    }
    return -sum;
}

LevyTruncation default_truncation(unsigned d, double b, double t)
{
    require(d >= 2, "degree d must be at least 2");
    require(t > 0.0, "time t must be positive");
    const double dd = d;
    LevyTruncation out;
    out.i_max = 1;
    while (t * std::pow(dd, 2.0 * b - out.i_max) / (dd - 1.0) > 1e-12) {
        ++out.i_max;
    }
    out.i_min = 0;
    while (t * std::pow(dd, out.i_min) / (dd - 1.0) > 1e-12) {
        --out.i_min;
    }
    return out;
}

double sample_levy(unsigned d, double b, double t, Stream& rng)
{
    return sample_levy(d, b, t, default_truncation(d, b, t), rng);
}

double sample_levy(unsigned d, double b, double t, const LevyTruncation& truncation, Stream& rng)
{
    require(d >= 2, "degree d must be at least 2");
    require(b >= 0.0 && b < 1.0, "phase b must lie in [0, 1)");
    require(t > 0.0, "time t must be positive");
    require(truncation.i_min <= 0 && truncation.i_max >= 1, "truncation must straddle jump size 1");
    const double dd = d;
    double value = 0.0;
    for (int i = truncation.i_max; i >= truncation.i_min; --i) {
        const double mass = t * std::pow(dd, i);
        const double location = std::pow(dd, b - i);
        const double count = static_cast<double>(sample_poisson(rng, mass));
        // Atoms below 1 (i >= 1 since b < 1) are compensated by their mean.
        value += (i >= 1 ? count - mass : count) * location;
    }
    return value;
}

double theorem2_statistic(double disconnected_fraction, const RegularParams& params)
{
    params.validate();
    const double h = static_cast<double>(params.h);
    const double c = params.c;
    return h * (disconnected_fraction - (1.0 - std::exp(-c)))
           + c * std::exp(-c) * std::log(h) / std::log(static_cast<double>(params.d));
}

double theorem2_sample(const RegularParams& params, Stream& rng)
{
    const auto levels = simulate_levels(params, params.h, rng);
    return theorem2_statistic(levels.disconnected_fraction(params.h), params);
}

}  // namespace pclab
