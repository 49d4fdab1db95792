#pragma once

#include <cstdint>
#include <vector>

#include "pclab/rng.hpp"

namespace pclab {

//! Percolation with survival exp(-c/h) on the rooted d-regular tree.
struct RegularParams
{
    unsigned d = 2;
    std::size_t h = 1;
    double c = 1.0;

    void validate() const;
    double survival() const;  // exp(-c/h)
    double removal() const;   // 1 - exp(-c/h), via expm1
    //! Fractional part of log_d h (0 exactly when h is a power of d).
    double phase() const;
};

//! floor(log_d h), computed with integer arithmetic.
std::size_t floor_log(unsigned d, std::size_t h);

/*!
 * Per-level counts of the clone Galton-Watson process
 * W_{j+1} ~ Binomial(d W_j, e^{-c/h}), W_0 = 1.
 *
 * While d^j <= 2^53 counts are exact integers (disconnected = d^j - W_j,
 * sigma available). Beyond that only the normalized fraction W_j d^{-j} is
 * kept, advanced with the normal approximation of the binomial step.
 */
struct LevelCounts
{
    unsigned d = 2;
    std::vector<double> connected_fraction;   // W_j d^{-j}, j = 0..kmax
    std::vector<std::uint64_t> connected;     // exact W_j, j < exact_levels()
    std::vector<std::uint64_t> disconnected;  // exact nabla_j
    std::vector<std::uint64_t> sigma;         // joint Sigma_j, when requested

    std::size_t levels() const noexcept { return connected_fraction.size(); }
    std::size_t exact_levels() const noexcept { return connected.size(); }
    double disconnected_fraction(std::size_t level) const;
};

LevelCounts simulate_levels(const RegularParams& params, std::size_t kmax, Stream& rng,
                            bool with_sigma = false);

//! Sum_{l=1}^{k} d^{k-l} Binomial(d^l, 1 - e^{-c/h}), independent binomials.
double sigma_sample(const RegularParams& params, std::size_t k, Stream& rng);

struct ExpectedCounts
{
    double disconnected = 0.0;  // d^k (1 - e^{-ck/h})
    double sigma = 0.0;         // k d^k (1 - e^{-c/h})
};

ExpectedCounts expected_counts(const RegularParams& params, std::size_t k);

//! d^{floor(b - log_d x) + 1} / (d - 1).
double lambda_bar(unsigned d, double b, double x);

/*!
 * Psi_b(a) = sum over atoms (mass d^i at d^{b-i}) of
 * d^i (e^{-a x} - 1 + a x 1{x < 1}), truncated to absolute error 1e-10.
 */
double psi(unsigned d, double b, double a);

/*!
 * kappa_k^{(h)}(a) = -ln E exp(-a h d^{-k} Sigma_k)
 *                  = -sum_{l=1}^{k} d^l ln(1 - (1 - e^{-c/h})(1 - e^{-a h d^{-l}})).
 */
double kappa(unsigned d, std::size_t k, std::size_t h, double c, double a);

struct LevyTruncation
{
    int i_min = 0;  // largest jumps kept: d^{b - i_min}
    int i_max = 0;  // smallest jumps kept: d^{b - i_max}
};

//! Truncation with omitted small-jump variance and large-jump rate below 1e-12.
LevyTruncation default_truncation(unsigned d, double b, double t);

/*!
 * L_b(t) as a compound Poisson sum over the truncated atom lattice, with
 * jumps below 1 compensated by their mean.
 */
double sample_levy(unsigned d, double b, double t, Stream& rng);
double sample_levy(unsigned d, double b, double t, const LevyTruncation& truncation, Stream& rng);

//! h (fraction - (1 - e^{-c})) + c e^{-c} log_d h, with fraction = d^{-h} nabla_h.
double theorem2_statistic(double disconnected_fraction, const RegularParams& params);

//! Simulate nabla_h once and return its rescaled statistic.
double theorem2_sample(const RegularParams& params, Stream& rng);

}  // namespace pclab
