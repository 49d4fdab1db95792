#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pclab/recursive_tree.hpp"
#include "pclab/root_isolation.hpp"
#include "pclab/rng.hpp"

namespace pclab {

/*!
 * Yule process with rare neutral mutations observed from k0 individuals
 * (m0 of them mutants) until the population reaches n.
 *
 * initial_lineage counts the individuals descending from those that were
 * mutants when the population had size lineage_size (k0 unless requested
 * otherwise); with lineage_size = k this is Delta_{k,n}.
 */
struct YuleRun
{
    std::size_t k0 = 0;
    std::size_t m0 = 0;
    std::size_t n = 0;
    double p = 1.0;
    double tau = 0.0;
    std::uint64_t clones = 0;
    std::uint64_t mutants = 0;
    std::size_t lineage_size = 0;
    std::uint64_t initial_lineage = 0;
    std::optional<MarkedTree> embedded;
};

struct YuleOptions
{
    bool keep_embedded = false;
    //! Population size at which mutant lineages are frozen (0 = k0).
    std::size_t lineage_size = 0;
};

/*!
 * Each birth waits Exp(current size), picks a uniform parent and is marked
 * with probability 1-p; children of mutants are mutants. With
 * keep_embedded (requires k0 = 1) the jump chain is returned as a marked
 * recursive tree.
 */
YuleRun yule_simulate(std::size_t k0, std::size_t m0, std::size_t n, double p, Stream& rng,
                      YuleOptions options = {});

/*!
 * Clone counts at the requested times (ascending) for a population started
 * from (k0, m0); used to check that clones form a Yule process of rate p.
 */
std::vector<std::uint64_t> yule_clone_snapshots(std::size_t k0, std::size_t m0, double p,
                                                std::span<const double> times, Stream& rng);

//! floor(ln^exponent n).
std::size_t threshold_size(std::size_t n, double exponent = 4.0);

//! e^tau ln^exponent n / n; requires run.k0 = floor(ln^exponent n).
double tau_statistic(const YuleRun& run, std::size_t n, double exponent = 4.0);

//! (ln n / n) Delta_{k,n} - 3c ln ln n from the Yule lineage count.
double mutant_descent(const YuleRun& run, double c);

//! Same statistic with Delta_{k,n} counted on a marked tree.
double mutant_descent(const MarkedTree& marked, std::size_t k, double c);

/*!
 * Clone count once the population grows from `size` (with `clones` clones)
 * to n. Only the jump chain is simulated: a birth adds a clone with
 * probability p * clones / size. Same law as yule_simulate(...).clones.
 */
std::uint64_t clone_count_chain(std::size_t size, std::uint64_t clones, std::size_t n, double p, Stream& rng);

struct PipelineRun
{
    std::size_t k = 0;
    std::uint64_t germ = 0;    // Delta_k
    std::uint64_t clones = 0;  // has exactly the law of G_n
    std::optional<YuleRun> spread;  // full Yule run, when requested
};

/*!
 * Giant-cluster pipeline: percolate T_k with p_n (k = floor(ln^4 n)) via the
 * continuous-time isolation, then grow from k to n. With keep_run the growth
 * is a full Yule run (birth times and lineages); otherwise only the clone
 * count chain.
 */
PipelineRun run_pipeline(std::size_t n, double c, Stream& rng, double exponent = 4.0, bool keep_run = false);

}  // namespace pclab
