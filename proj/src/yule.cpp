#include "pclab/yule.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pclab/distributions.hpp"
#include "pclab/error.hpp"
#include "pclab/percolation.hpp"
#include "tree_access.hpp"

namespace pclab {
namespace {

// Neumaier compensated sum; tau is ~ln(n/k0) built from ~n tiny increments.
class CompensatedSum
{
  public:
    void add(double x)
    {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x)) {
            carry_ += (sum_ - t) + x;
        }
        else {
            carry_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + carry_; }

  private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

void check_yule_domain(std::size_t k0, std::size_t m0, std::size_t n, double p)
{
    require(k0 >= 1 && k0 <= n, "Yule run needs 1 <= k0 <= n");
    require(m0 <= k0, "initial mutants m0 cannot exceed k0");
    require(p >= 0.0 && p <= 1.0, "clone-birth probability must lie in [0, 1]");
}

YuleRun simulate_counts(std::size_t k0, std::size_t m0, std::size_t n, double p,
                        std::size_t lineage_size, Stream& rng)
{
    // Individuals are exchangeable, so only counts are kept. Ordering of the
    // population: [0, lineage) initial lineage, [lineage, mutants) other
    // mutants, [mutants, size) clones.
    std::uint64_t size = k0;
    std::uint64_t mutants = m0;
    std::uint64_t lineage = lineage_size == k0 ? m0 : 0;
    CompensatedSum tau;
    while (size < n) {
        tau.add(sample_exponential(rng) / static_cast<double>(size));
        const std::uint64_t parent = rng.below(size);
        const bool marked = rng.uniform() >= p;
        if (parent < lineage) {
            ++lineage;
            ++mutants;
        }
        else if (parent < mutants || marked) {
            ++mutants;
        }
        ++size;
        if (size == lineage_size) {
            lineage = mutants;
        }
    }
    YuleRun run;
    run.k0 = k0;
    run.m0 = m0;
    run.n = n;
    run.p = p;
    run.tau = tau.value();
    run.clones = size - mutants;
    run.mutants = mutants;
    run.lineage_size = lineage_size;
    run.initial_lineage = lineage;
    return run;
}

YuleRun simulate_embedded(std::size_t n, double p, std::size_t lineage_size, Stream& rng)
{
    require(n <= 0xffffffffull, "embedded tree size exceeds 32-bit vertex labels");
    std::vector<Vertex> parents(n + 1, 0);
    std::vector<std::uint8_t> removed(n + 1, 0);
    // Bit 0: mutant. Bit 1: in the lineage frozen at lineage_size.
    std::vector<std::uint8_t> status(n + 1, 0);
    std::uint64_t mutants = 0;
    std::uint64_t lineage = 0;
    CompensatedSum tau;
    for (std::size_t v = 2; v <= n; ++v) {
        const std::uint64_t size = v - 1;
        tau.add(sample_exponential(rng) / static_cast<double>(size));
        const auto parent = static_cast<Vertex>(1 + rng.below(size));
        const bool marked = rng.uniform() >= p;
        parents[v] = parent;
        removed[v] = marked;
        const bool mutant = marked || (status[parent] & 1u);
        const bool in_lineage = (status[parent] & 2u) || (mutant && v <= lineage_size);
        status[v] = static_cast<std::uint8_t>((mutant ? 1u : 0u) | (in_lineage ? 2u : 0u));
        mutants += mutant;
        lineage += in_lineage;
    }
    YuleRun run;
    run.k0 = 1;
    run.m0 = 0;
    run.n = n;
    run.p = p;
    run.tau = tau.value();
    run.clones = n - mutants;
    run.mutants = mutants;
    run.lineage_size = lineage_size;
    run.initial_lineage = lineage;
    run.embedded = TreeBuilderAccess::marked(TreeBuilderAccess::tree(std::move(parents)),
                                             std::move(removed), p);
    return run;
}

}  // namespace

YuleRun yule_simulate(std::size_t k0, std::size_t m0, std::size_t n, double p, Stream& rng,
                      YuleOptions options)
{
    check_yule_domain(k0, m0, n, p);
    const std::size_t lineage_size = options.lineage_size == 0 ? k0 : options.lineage_size;
    require(lineage_size >= k0 && lineage_size <= n,
            [lineage_size] { return "lineage size must lie in [k0, n], got " + std::to_string(lineage_size); });
    if (options.keep_embedded) {
        require(k0 == 1, "embedding the jump chain requires k0 = 1");
        return simulate_embedded(n, p, lineage_size, rng);
    }
    return simulate_counts(k0, m0, n, p, lineage_size, rng);
}

std::vector<std::uint64_t> yule_clone_snapshots(std::size_t k0, std::size_t m0, double p,
                                                std::span<const double> times, Stream& rng)
{
    check_yule_domain(k0, m0, k0, p);
    std::vector<std::uint64_t> result;
    result.reserve(times.size());
    std::uint64_t size = k0;
    std::uint64_t mutants = m0;
    double now = 0.0;
    double next_birth = sample_exponential(rng) / static_cast<double>(size);
    for (double t : times) {
        require(t >= now, "snapshot times must be ascending and nonnegative");
        while (next_birth <= t) {
            now = next_birth;
            const bool parent_mutant = rng.below(size) < mutants;
            const bool marked = rng.uniform() >= p;
            mutants += (parent_mutant || marked);
            ++size;
            next_birth = now + sample_exponential(rng) / static_cast<double>(size);
        }
        now = t;
        result.push_back(size - mutants);
    }
    return result;
}

std::size_t threshold_size(std::size_t n, double exponent)
{
    require(n >= 3, "threshold needs n >= 3");
    return static_cast<std::size_t>(std::floor(std::pow(std::log(static_cast<double>(n)), exponent)));
}

double tau_statistic(const YuleRun& run, std::size_t n, double exponent)
{
    require(run.n == n, "run was not driven to population " + std::to_string(n));
    const std::size_t expected = threshold_size(n, exponent);
    require(run.k0 == expected, "run started from k0 = " + std::to_string(run.k0)
                                    + " but floor(ln^" + std::to_string(exponent) + " n) = "
                                    + std::to_string(expected));
    const double nd = static_cast<double>(n);
    return std::exp(run.tau) * std::pow(std::log(nd), exponent) / nd;
}

double mutant_descent(const YuleRun& run, double c)
{
    return limit_statistic(LimitStatisticKind::mutant_descent,
                           static_cast<double>(run.initial_lineage),
                           {static_cast<double>(run.n), c, 0.0});
}

double mutant_descent(const MarkedTree& marked, std::size_t k, double c)
{
    const auto decomposition = decompose(marked, k);
    return limit_statistic(LimitStatisticKind::mutant_descent,
                           static_cast<double>(*decomposition.prefix_mutants),
                           {static_cast<double>(marked.size()), c, 0.0});
}

std::uint64_t clone_count_chain(std::size_t size, std::uint64_t clones, std::size_t n, double p, Stream& rng)
{
    check_yule_domain(size, size - std::min<std::uint64_t>(clones, size), n, p);
    require(clones <= size, "clone count cannot exceed the population");
    for (std::size_t y = size; y < n; ++y) {
        clones += rng.uniform() * static_cast<double>(y) < p * static_cast<double>(clones);
    }
    return clones;
}

PipelineRun run_pipeline(std::size_t n, double c, Stream& rng, double exponent, bool keep_run)
{
    const GermSpec spec = GermSpec::pipeline(n, c, exponent);
    require(spec.k >= 2 && spec.k <= n,
            "pipeline needs 2 <= floor(ln^4 n) <= n; n = " + std::to_string(n) + " is too small");
    PipelineRun result;
    result.k = spec.k;
    result.germ = germ_delta(spec, rng, GermRoute::clock_cutoff);
    if (keep_run) {
        result.spread = yule_simulate(spec.k, result.germ, n, spec.survival(), rng);
        result.clones = result.spread->clones;
    }
    else {
        result.clones = clone_count_chain(spec.k, spec.k - result.germ, n, spec.survival(), rng);
    }
    return result;
}

}  // namespace pclab
