#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "pclab/rng.hpp"

namespace pclab {

// Step law P(xi = j) = 1/(j(j+1)), j >= 1; tail P(xi >= j) = 1/j.

//! floor(1/u) for u in (0, 1).
std::uint64_t xi_from_uniform(double u);

std::uint64_t sample_xi(Stream& rng);

//! xi conditioned on xi <= bound, by inversion (one uniform).
std::uint64_t sample_xi_at_most(std::uint64_t bound, Stream& rng);

struct WalkPath
{
    std::vector<std::uint64_t> partial_sums;  // S_0 = 0, S_1, ..., S_steps

    std::size_t steps() const noexcept { return partial_sums.size() - 1; }
    //! S_l / l - ln l at l = steps().
    double centered() const;
    //! min{l : S_l >= level}, if reached within the path.
    std::optional<std::size_t> first_passage(std::uint64_t level) const;
};

WalkPath walk(std::size_t steps, Stream& rng);

//! S_l / l - ln l without storing the path.
double walk_centered(std::size_t steps, Stream& rng);

/*!
 * Discrete Luria-Delbrueck variable Z_m: a Poisson(m) number of xi-steps.
 *
 * Small m sums the steps directly. Large m splits the compound Poisson sum
 * by step value (independent Poisson counts for xi = 1..J plus a tail
 * xi > J), which has the same law at O(sqrt m) cost.
 */
std::uint64_t sample_ld_discrete(double m, Stream& rng);

//! Always the direct Poisson-then-sum construction.
std::uint64_t sample_ld_discrete_direct(double m, Stream& rng);

//! (1 - s)^{m(1 - s)/s}, with the s -> 0 limit e^{-m}; s in [0, 1).
double gf_discrete(double m, double s);

//! exp(-(pi/2)|theta| - i theta ln|theta|), equal to 1 at theta = 0.
std::complex<double> cf_continuous(double theta);

enum class ContinuousMethod { scaled_discrete, stable_transform };

/*!
 * Continuous Luria-Delbrueck draw.
 *
 * scaled_discrete returns Z_m/m - ln m, approximate with O(ln m / m) bias.
 * stable_transform is the Chambers-Mallows-Stuck draw of the totally skewed
 * 1-stable law with scale pi/2, which has exactly the characteristic
 * function above.
 */
double sample_ld_continuous(ContinuousMethod method, Stream& rng, double m = 1e6);

struct ClusterAtoms
{
    double c = 0.0;
    double xmin = 0.0;
    std::vector<double> atoms;  // ranked, nonincreasing, all > xmin
};

struct AtomSample
{
    ClusterAtoms atoms;
    std::optional<std::uint64_t> xn;  // sum of floor((n / ln n) x_i)
};

/*!
 * Poisson random measure with intensity c e^{-c} x^{-2} dx restricted to
 * (xmin, inf). With n, also returns X_n; that requires xmin <= ln n / n so
 * no atom that contributes to X_n is truncated away.
 */
AtomSample sample_cluster_atoms(double c, double xmin, std::optional<std::size_t> n,
                                Stream& rng);

//! (X_n/n - c e^-c) ln n + c e^-c ln ln n.
double xn_statistic(double xn, double n, double c);

}  // namespace pclab
