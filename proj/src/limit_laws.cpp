#include "pclab/limit_laws.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "pclab/distributions.hpp"
#include "pclab/error.hpp"

namespace pclab {
namespace {

constexpr double kDirectLimit = 256.0;

}  // namespace

std::uint64_t xi_from_uniform(double u)
{
    require(u > 0.0 && u < 1.0, "uniform argument must lie in (0, 1)");
    const double v = std::floor(1.0 / u);
    // 1/u <= 2^54 for the uniforms Stream produces.
    return static_cast<std::uint64_t>(v);
}

std::uint64_t sample_xi(Stream& rng)
{
    return xi_from_uniform(rng.uniform());
}

std::uint64_t sample_xi_at_most(std::uint64_t bound, Stream& rng)
{
    require(bound >= 1, "conditioning bound must be at least 1");
    if (bound == 1) {
        return 1;
    }
    // xi = floor(1/V) with V uniform on (1/(bound+1), 1).
    const double lo = 1.0 / (static_cast<double>(bound) + 1.0);
    const double v = lo + (1.0 - lo) * rng.uniform();
    const auto j = static_cast<std::uint64_t>(std::floor(1.0 / v));
    return std::clamp<std::uint64_t>(j, 1, bound);
}

double WalkPath::centered() const
{
    const double l = static_cast<double>(steps());
    require(l >= 1.0, "centered walk statistic needs at least one step");
    return static_cast<double>(partial_sums.back()) / l - std::log(l);
}

std::optional<std::size_t> WalkPath::first_passage(std::uint64_t level) const
{
    auto it = std::lower_bound(partial_sums.begin(), partial_sums.end(), level);
    if (it == partial_sums.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - partial_sums.begin());
}

WalkPath walk(std::size_t steps, Stream& rng)
{
    require(steps >= 1, "walk needs at least one step");
    WalkPath path;
    path.partial_sums.reserve(steps + 1);
    path.partial_sums.push_back(0);
    std::uint64_t sum = 0;
    for (std::size_t l = 0; l < steps; ++l) {
        sum += sample_xi(rng);
        path.partial_sums.push_back(sum);
    }
    return path;
}

double walk_centered(std::size_t steps, Stream& rng)
{
    require(steps >= 1, "walk needs at least one step");
    double sum = 0.0;
    for (std::size_t l = 0; l < steps; ++l) {
        sum += static_cast<double>(sample_xi(rng));
    }
    const double l = static_cast<double>(steps);
    return sum / l - std::log(l);
}

std::uint64_t sample_ld_discrete_direct(double m, Stream& rng)
{
    require(m >= 0.0, "Luria-Delbrueck parameter must be nonnegative");
    const std::uint64_t count = sample_poisson(rng, m);
    std::uint64_t sum = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
        sum += sample_xi(rng);
    }
    return sum;
}

std::uint64_t sample_ld_discrete(double m, Stream& rng)
{
    require(m >= 0.0, "Luria-Delbrueck parameter must be nonnegative");
    if (m <= kDirectLimit) {
        return sample_ld_discrete_direct(m, rng);
    }
    const auto cutoff = static_cast<std::uint64_t>(std::ceil(std::sqrt(m)));
    std::uint64_t sum = 0;
    for (std::uint64_t j = 1; j <= cutoff; ++j) {
        const double jd = static_cast<double>(j);
        sum += j * sample_poisson(rng, m / (jd * (jd + 1.0)));
    }
    // Steps above the cutoff: P(xi >= j | xi > J) = (J + 1)/j.
    const double tail_base = static_cast<double>(cutoff) + 1.0;
    const std::uint64_t tail = sample_poisson(rng, m / tail_base);
    for (std::uint64_t i = 0; i < tail; ++i) {
        sum += static_cast<std::uint64_t>(std::floor(tail_base / rng.uniform()));
    }
    return sum;
}

double gf_discrete(double m, double s)
{
    require(m >= 0.0, "Luria-Delbrueck parameter must be nonnegative");
    require(s >= 0.0 && s < 1.0, "generating-function argument must lie in [0, 1)");
    if (s == 0.0) {
        return std::exp(-m);
    }
    return std::exp(m * (1.0 - s) / s * std::log1p(-s));
}

std::complex<double> cf_continuous(double theta)
{
    if (theta == 0.0) {
        return {1.0, 0.0};
    }
    const double modulus = std::exp(-std::numbers::pi / 2.0 * std::fabs(theta));
    const double phase = -theta * std::log(std::fabs(theta));
    return std::polar(modulus, phase);
}

double sample_ld_continuous(ContinuousMethod method, Stream& rng, double m)
{
    switch (method) {
        case ContinuousMethod::scaled_discrete: {
            require(m > 0.0, "scaled_discrete needs m > 0");
            return static_cast<double>(sample_ld_discrete(m, rng)) / m - std::log(m);
        }
        case ContinuousMethod::stable_transform: {
            // CMS for alpha = 1, beta = 1, then scale pi/2 with its
            // alpha = 1 location shift (2/pi) sigma ln sigma; the constants
            // fold into the expression below.
            constexpr double half_pi = std::numbers::pi / 2.0;
            const double v = std::numbers::pi * (rng.uniform() - 0.5);
            const double w = sample_exponential(rng);
            return (half_pi + v) * std::tan(v) - std::log(w * std::cos(v) / (half_pi + v));
        }
    }
    throw DomainError("unknown continuous Luria-Delbrueck method");
}

AtomSample sample_cluster_atoms(double c, double xmin, std::optional<std::size_t> n,
                                Stream& rng)
{
    require(c > 0.0, "c must be positive");
    require(xmin > 0.0, "atom truncation xmin must be positive");
    AtomSample result;
    result.atoms.c = c;
    result.atoms.xmin = xmin;
    const double rate = c * std::exp(-c);
    const std::uint64_t count = sample_poisson(rng, rate / xmin);
    result.atoms.atoms.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        result.atoms.atoms.push_back(xmin / rng.uniform());
    }
    std::sort(result.atoms.atoms.begin(), result.atoms.atoms.end(), std::greater<>());
    if (n) {
        require(*n >= 3, "X_n needs n >= 3");
        const double nd = static_cast<double>(*n);
        const double scale = nd / std::log(nd);
        require(xmin <= 1.0 / scale * (1.0 + 1e-12), "X_n needs xmin <= ln n / n");
        std::uint64_t sum = 0;
        for (double x : result.atoms.atoms) {
            sum += static_cast<std::uint64_t>(std::floor(scale * x));
        }
        result.xn = sum;
    }
    return result;
}

double xn_statistic(double xn, double n, double c)
{
    require(n >= 3.0, "n must be at least 3");
    const double rate = c * std::exp(-c);
    return (xn / n - rate) * std::log(n) + rate * std::log(std::log(n));
}

}  // namespace pclab
