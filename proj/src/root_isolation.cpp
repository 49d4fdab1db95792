#include "pclab/root_isolation.hpp"

#include <cmath>
#include <string>

#include "pclab/distributions.hpp"
#include "pclab/error.hpp"
#include "pclab/limit_laws.hpp"
#include "pclab/percolation.hpp"

namespace pclab {

double IsolationTrace::time_of(std::size_t step) const
{
    require(times.has_value(), "trace has no cut instants attached");
    if (step == 0) {
        return 0.0;
    }
    if (step > times->size()) {
        return std::numeric_limits<double>::infinity();
    }
    return (*times)[step - 1];
}

IsolationTrace meir_moon_explicit(const RecursiveTree& tree, Stream& rng)
{
    const std::size_t k = tree.size();
    IsolationTrace trace;
    trace.k = k;
    if (k < 2) {
        return trace;
    }
    auto parents = tree.parent_table();

    // Child lists in CSR form.
    std::vector<std::uint32_t> offset(k + 2, 0);
    for (std::size_t i = 2; i <= k; ++i) {
        ++offset[parents[i] + 1];
    }
    for (std::size_t v = 1; v <= k; ++v) {
        offset[v + 1] += offset[v];
    }
    std::vector<Vertex> children(k - 1);
    {
        std::vector<std::uint32_t> fill(offset.begin(), offset.end() - 1);
        for (std::size_t i = 2; i <= k; ++i) {
            children[fill[parents[i]]++] = static_cast<Vertex>(i);
        }
    }

    // Non-root vertices still attached, with O(1) swap-removal.
    std::vector<Vertex> alive(k - 1);
    std::vector<std::uint32_t> slot(k + 1, 0);
    for (std::size_t i = 2; i <= k; ++i) {
        alive[i - 2] = static_cast<Vertex>(i);
        slot[i] = static_cast<std::uint32_t>(i - 2);
    }
    std::vector<std::uint8_t> detached(k + 1, 0);
    std::vector<Vertex> stack;

    auto detach = [&](Vertex v) {
        detached[v] = 1;
        const std::uint32_t at = slot[v];
        const Vertex last = alive.back();
        alive[at] = last;
        slot[last] = at;
        alive.pop_back();
    };

    while (!alive.empty()) {
        const Vertex cut = alive[rng.below(alive.size())];
        std::uint64_t size = 0;
        stack.push_back(cut);
        while (!stack.empty()) {
            const Vertex v = stack.back();
            stack.pop_back();
            detach(v);
            ++size;
            for (auto c = offset[v]; c < offset[v + 1]; ++c) {
                if (!detached[children[c]]) {
                    stack.push_back(children[c]);
                }
            }
        }
        trace.push_cut(size);
    }
    return trace;
}

double isolation_cut_probability(std::uint64_t m, std::uint64_t j)
{
    require(m >= 2, "remaining size must be at least 2");
    if (j < 1 || j >= m) {
        return 0.0;
    }
    const double md = static_cast<double>(m);
    const double jd = static_cast<double>(j);
    return md / (md - 1.0) / (jd * (jd + 1.0));
}

IsolationTrace meir_moon_distributional(std::size_t k, Stream& rng, std::size_t max_steps)
{
    require(k >= 1, "tree size must be at least 1");
    IsolationTrace trace;
    trace.k = k;
    std::uint64_t remaining = k;
    while (remaining > 1 && trace.steps() < max_steps) {
        const std::uint64_t cut = sample_xi_at_most(remaining - 1, rng);
        trace.push_cut(cut);
        remaining -= cut;
    }
    return trace;
}

CoupledRun coupled_walk_isolation(std::size_t k, Stream& rng)
{
    require(k >= 2, "coupled isolation needs k >= 2");
    CoupledRun run;
    run.trace.k = k;
    run.walk.push_back(0);
    std::uint64_t remaining = k;
    while (run.first_passage == 0) {
        const std::uint64_t step = sample_xi(rng);
        run.walk.push_back(run.walk.back() + step);
        if (step + 1 <= remaining) {
            run.trace.push_cut(step);
            remaining -= step;
        }
        else {
            run.first_passage = run.walk.size() - 1;
            if (remaining > 1) {
                const std::uint64_t cut = sample_xi_at_most(remaining - 1, rng);
                run.trace.push_cut(cut);
                remaining -= cut;
            }
        }
    }
    while (remaining > 1) {
        const std::uint64_t cut = sample_xi_at_most(remaining - 1, rng);
        run.trace.push_cut(cut);
        remaining -= cut;
    }
    return run;
}

IsolationTrace percolation_schedule(IsolationTrace trace, std::size_t k, Stream& rng)
{
    require(k >= 1 && trace.k == k, "trace was not computed for size " + std::to_string(k));
    const double scale = std::pow(static_cast<double>(k), 0.25);
    std::vector<double> times;
    times.reserve(trace.steps());
    double now = 0.0;
    for (std::size_t j = 0; j < trace.steps(); ++j) {
        const double edges = static_cast<double>(k - trace.partials[j] - 1);
        now += scale / edges * sample_exponential(rng);
        times.push_back(now);
    }
    trace.times = std::move(times);
    return trace;
}

GermSpec GermSpec::pipeline(std::size_t n, double c, double exponent)
{
    require(n >= 3, "pipeline germ needs n >= 3");
    const auto k = static_cast<std::size_t>(std::floor(std::pow(std::log(static_cast<double>(n)), exponent)));
    return {k, c, SurvivalMode::pipeline, n};
}

double GermSpec::survival() const
{
    require(k >= 2, "germ needs k >= 2");
    require(c >= 0.0, "c must be nonnegative");
    double removal = 0.0;
    if (mode == SurvivalMode::standalone) {
        removal = c * std::pow(static_cast<double>(k), -0.25);
    }
    else {
        require(n >= 3, "pipeline germ needs n >= 3");
        removal = c / std::log(static_cast<double>(n));
    }
    require(removal < 1.0, "c k^{-1/4} (or c / ln n) must be below 1 for q_k in (0, 1)");
    return 1.0 - removal;
}

double GermSpec::cutoff_time() const
{
    return -std::pow(static_cast<double>(k), 0.25) * std::log(survival());
}

std::uint64_t germ_delta(const GermSpec& spec, Stream& rng, GermRoute route)
{
    const double q = spec.survival();
    if (route == GermRoute::direct_percolation) {
        return decompose(build_marked(spec.k, q, rng)).disconnected;
    }
    const double cutoff = spec.cutoff_time();
    const double scale = std::pow(static_cast<double>(spec.k), 0.25);
    std::uint64_t remaining = spec.k;
    double now = 0.0;
    while (remaining > 1) {
        now += scale / static_cast<double>(remaining - 1) * sample_exponential(rng);
        if (now > cutoff) {
            break;
        }
        remaining -= sample_xi_at_most(remaining - 1, rng);
    }
    return spec.k - remaining;
}

}  // namespace pclab
