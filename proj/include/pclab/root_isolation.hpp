#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "pclab/recursive_tree.hpp"
#include "pclab/rng.hpp"

namespace pclab {

/*!
 * Record of a root-isolation run on a tree of size k.
 *
 * cuts[l-1] is the size of the subtree set aside at step l; partials[l] is
 * D_k(l), the number of vertices disconnected after l steps (partials[0] = 0).
 * times, when attached, holds the cut instants: times[l-1] is the instant of
 * step l, and step 0 sits at the time origin.
 */
struct IsolationTrace
{
    std::size_t k = 0;
    std::vector<std::uint64_t> cuts;
    std::vector<std::uint64_t> partials{0};
    std::optional<std::vector<double>> times;

    std::size_t steps() const noexcept { return cuts.size(); }
    bool isolated() const noexcept { return k <= 1 || partials.back() + 1 == k; }
    //! rho_k(l); 0 for l = 0, +inf beyond the last step.
    double time_of(std::size_t step) const;

    void push_cut(std::uint64_t size)
    {
        cuts.push_back(size);
        partials.push_back(partials.back() + size);
    }
};

/*!
 * Meir-Moon isolation on an explicit tree: remove a uniform edge of the
 * current root subtree and set the detached part aside, until the root is
 * alone. Uses child lists built once, so each vertex is visited O(1) times
 * over the whole run.
 */
IsolationTrace meir_moon_explicit(const RecursiveTree& tree, Stream& rng);

/*!
 * Same law for a fresh uniform recursive tree of size k, without building
 * it: from remaining size m, the cut has P(j) = (m/(m-1)) / (j(j+1)) for
 * j in 1..m-1. max_steps truncates the run.
 */
IsolationTrace meir_moon_distributional(std::size_t k, Stream& rng,
                                        std::size_t max_steps = std::numeric_limits<std::size_t>::max());

//! P(cut = j | remaining m) used by the distributional form.
double isolation_cut_probability(std::uint64_t m, std::uint64_t j);

struct CoupledRun
{
    IsolationTrace trace;
    std::vector<std::uint64_t> walk;  // S_0 = 0, ..., S_{N(k)}
    std::size_t first_passage = 0;    // N(k) = min{l : S_l >= k}
};

/*!
 * Isolation driven by a step-law random walk: while the step fits in the
 * non-root part of the remaining tree it is used as the cut, so
 * D_k(l) = S_l for l < N(k). After the first passage the isolation finishes
 * with fresh conditional draws.
 */
CoupledRun coupled_walk_isolation(std::size_t k, Stream& rng);

/*!
 * Attach cut instants for continuous-time percolation where every edge has
 * an exponential clock of rate k^{-1/4}: the wait before step l+1 is
 * exponential with rate (edges left) * k^{-1/4}.
 */
IsolationTrace percolation_schedule(IsolationTrace trace, std::size_t k, Stream& rng);

enum class GermRoute { clock_cutoff, direct_percolation };

//! Which parametrization of the survival probability q_k is in force.
enum class SurvivalMode {
    standalone,  // q_k = 1 - c k^{-1/4}
    pipeline,    // q_k = p_n = 1 - c / ln n with k = floor(ln^4 n)
};

struct GermSpec
{
    std::size_t k = 0;
    double c = 1.0;
    SurvivalMode mode = SurvivalMode::standalone;
    std::size_t n = 0;  // pipeline mode only

    static GermSpec standalone(std::size_t k, double c) { return {k, c, SurvivalMode::standalone, 0}; }
    //! k = floor(ln^exponent n).
    static GermSpec pipeline(std::size_t n, double c, double exponent = 4.0);

    double survival() const;
    //! t_k = -k^{1/4} ln q_k.
    double cutoff_time() const;
};

/*!
 * Delta_k: vertices of T_k cut from the root by percolation with q_k.
 * clock_cutoff runs the distributional isolation in continuous time up to
 * t_k; direct_percolation builds and decomposes a marked tree.
 */
std::uint64_t germ_delta(const GermSpec& spec, Stream& rng, GermRoute route);

}  // namespace pclab
