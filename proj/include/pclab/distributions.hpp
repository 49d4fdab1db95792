#pragma once

#include <cstdint>

#include "pclab/rng.hpp"

// Samplers written against Stream directly: the std:: distributions are
// implementation-defined, which would break byte-identical output across
// toolchains.
namespace pclab {

double sample_exponential(Stream& rng);

double sample_normal(Stream& rng);

bool sample_bernoulli(Stream& rng, double p);

/*!
 * Poisson variate.
 *
 * Exact inversion below mean 10, Hörmann's PTRS transformed rejection up to
 * mean 1e9, normal approximation beyond (relative error below 1e-4 there).
 */
std::uint64_t sample_poisson(Stream& rng, double mean);

/*!
 * Binomial variate.
 *
 * Exact for trials <= 1e5 or mean below 30 (inversion, or geometric skipping
 * when the inversion start would underflow). Above that, a normal
 * approximation with continuity correction clamped to [0, trials].
 */
std::uint64_t sample_binomial(Stream& rng, std::uint64_t trials, double p);

}  // namespace pclab
