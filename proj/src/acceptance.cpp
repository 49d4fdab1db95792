#include "pclab/acceptance.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <numeric>

#include <omp.h>

#include "pclab/error.hpp"
#include "pclab/experiments.hpp"
#include "pclab/limit_laws.hpp"
#include "pclab/percolation.hpp"
#include "pclab/recursive_tree.hpp"
#include "pclab/regular_tree.hpp"
#include "pclab/replicas.hpp"
#include "pclab/root_isolation.hpp"
#include "pclab/yule.hpp"

namespace pclab {
namespace {

const std::array<std::string, kCriterionCount> kTitles = {
    "exact conservation and exhaustive decomposition oracle",
    "exact first moment of G_n / n",
    "step law frequencies and tail",
    "generating function of Z_m",
    "walk coupling and isolation forms",
    "germ routes and convergence trend",
    "giant cluster pipeline and convergence trend",
    "level means on the regular tree",
    "cumulant residual against the Levy exponent",
    "Levy sampler transform and increments",
    "regular tree convergence trend",
    "urn and cluster-measure equivalences",
    "determinism across runs and worker counts",
};

struct Context
{
    std::uint64_t seed;
    std::size_t workers;

    std::uint64_t seed_of(const std::string& label) const { return seed_for(seed, label); }
};

double as_double(std::uint64_t v)
{
    return static_cast<double>(v);
}

Verdict count_verdict(const std::string& check, double count, const std::string& rule = "count == 0")
{
    return {check, count == 0.0, count, 0.0, rule};
}

// One verdict per consecutive pair of the ladder: distance must strictly drop.
void add_trend(ComparisonReport& report, const std::string& name, const std::vector<std::string>& rungs,
               const std::vector<stats::KsResult>& distances)
{
    for (std::size_t i = 0; i < distances.size(); ++i) {
        report.distances.push_back({name + " at " + rungs[i], distances[i]});
    }
    for (std::size_t i = 1; i < distances.size(); ++i) {
        report.verdicts.push_back({name + ": distance at " + rungs[i] + " < distance at " + rungs[i - 1],
                                   distances[i].statistic < distances[i - 1].statistic,
                                   distances[i].statistic, distances[i - 1].statistic,
                                   "value < tolerance (strict decrease)"});
    }
}

// --- 1 ---------------------------------------------------------------------

// Components of the forest left after deleting the removed edges, by
// breadth-first search over the undirected kept edges.
struct OracleComponents
{
    std::uint64_t root_size = 0;
    std::array<std::uint64_t, 16> others{};  // sorted nonincreasing
    std::size_t other_count = 0;
};

OracleComponents oracle_components(std::span<const Vertex> parent, std::span<const std::uint8_t> removed,
                                   std::size_t n)
{
    std::array<std::array<std::uint8_t, 16>, 16> adjacent{};
    std::array<std::uint8_t, 16> degree{};
    for (std::size_t v = 2; v <= n; ++v) {
        if (!removed[v]) {
            const auto u = parent[v];
            adjacent[v][degree[v]++] = static_cast<std::uint8_t>(u);
            adjacent[u][degree[u]++] = static_cast<std::uint8_t>(v);
        }
    }
    std::array<bool, 16> seen{};
    OracleComponents out;
    for (std::size_t start = 1; start <= n; ++start) {
        if (seen[start]) {
            continue;
        }
        std::array<std::uint8_t, 16> queue{};
        std::size_t head = 0;
        std::size_t tail = 0;
        queue[tail++] = static_cast<std::uint8_t>(start);
        seen[start] = true;
        while (head < tail) {
            const auto v = queue[head++];
            for (std::size_t i = 0; i < degree[v]; ++i) {
                const auto w = adjacent[v][i];
                if (!seen[w]) {
                    seen[w] = true;
                    queue[tail++] = w;
                }
            }
        }
        if (start == 1) {
            out.root_size = tail;
        }
        else {
            out.others[out.other_count++] = tail;
        }
    }
    std::sort(out.others.begin(), out.others.begin() + out.other_count, std::greater<>());
    return out;
}

CriterionOutcome criterion_1(const Context& ctx)
{
    CriterionOutcome out;
    // Random instances.
    const auto rows = run_replicas(
        [](Stream& rng) {
            const std::size_t n = 1 + rng.below(1000);
            const double p = rng.uniform();
            const auto parts = decompose(build_marked(n, p, rng));
            const std::uint64_t total = std::accumulate(parts.ranked_sizes.begin(), parts.ranked_sizes.end(),
                                                        std::uint64_t{0});
            const bool ok = parts.root_cluster_size + total == n && parts.disconnected == total;
            return std::vector<double>{ok ? 0.0 : 1.0};
        },
        {"violation"}, 10000, ctx.seed_of("1/random"), ctx.workers);
    const auto violations = rows.column("violation");
    out.report.verdicts.push_back(count_verdict("G + sum C_i = n on 10^4 random instances",
                                                std::accumulate(violations.begin(), violations.end(), 0.0)));

    // Every recursive tree with n <= 10 under every mark pattern.
    std::uint64_t mismatches = 0;
    std::uint64_t cases = 0;
    const int threads = ctx.workers == 0 ? omp_get_max_threads() : static_cast<int>(ctx.workers);
    for (std::size_t n = 1; n <= 10; ++n) {
        const std::size_t edges = n - 1;
        std::int64_t trees = 1;
        for (std::size_t m = 2; m < n; ++m) {
            trees *= static_cast<std::int64_t>(m);
        }
#pragma omp parallel num_threads(threads) reduction(+ : mismatches, cases)
        {
            DecomposeScratch scratch;
            ClusterDecomposition parts;
            std::vector<Vertex> parents(edges, 1);  // parents of 2..n
            std::vector<std::uint8_t> removed(n + 1, 0);
#pragma omp for schedule(dynamic, 64)
            for (std::int64_t index = 0; index < trees; ++index) {
                // Mixed radix: the parent of vertex i + 2 ranges over 1..i + 1.
                auto rest = static_cast<std::uint64_t>(index);
                for (std::size_t i = 0; i < edges; ++i) {
                    parents[i] = static_cast<Vertex>(1 + rest % (i + 1));
                    rest /= i + 1;
                }
                const RecursiveTree tree(parents);
                const auto table = tree.parent_table();
                for (std::uint32_t mask = 0; mask < (1u << edges); ++mask) {
                    for (std::size_t e = 0; e < edges; ++e) {
                        removed[e + 2] = (mask >> e) & 1u;
                    }
                    decompose_into(table, removed, std::nullopt, scratch, parts);
                    const auto oracle = oracle_components(table, removed, n);
                    const bool same = parts.root_cluster_size == oracle.root_size
                                      && parts.disconnected == n - oracle.root_size
                                      && std::equal(parts.ranked_sizes.begin(), parts.ranked_sizes.end(),
                                                    oracle.others.begin(), oracle.others.begin() + oracle.other_count);
                    mismatches += same ? 0 : 1;
                    ++cases;
                }
            }
        }
    }
    out.report.verdicts.push_back(count_verdict("decompose = breadth-first components on all trees n <= 10",
                                                static_cast<double>(mismatches)));
    // sum over n of (n - 1)! trees times 2^(n - 1) mark patterns
    double expected_cases = 0;
    double trees = 1;
    for (std::size_t n = 1; n <= 10; ++n) {
        trees *= n > 1 ? static_cast<double>(n - 1) : 1.0;
        expected_cases += trees * std::ldexp(1.0, static_cast<int>(n - 1));
    }
    out.report.verdicts.push_back({"exhaustive cases enumerated", static_cast<double>(cases) == expected_cases,
                                   static_cast<double>(cases), expected_cases,
                                   "value == tolerance"});
    return out;
}

// --- 2 ---------------------------------------------------------------------

CriterionOutcome criterion_2(const Context& ctx)
{
    CriterionOutcome out;
    const std::size_t n = 100000;
    const double c = 1.0;
    const double p = 1.0 - c / std::log(static_cast<double>(n));
    const auto fractions = replicate(
        [=](Stream& rng) {
            return as_double(decompose(build_marked(n, p, rng)).root_cluster_size) / static_cast<double>(n);
        },
        10000, ctx.seed_of("2/giant"), ctx.workers);
    out.report.sample_summary["G_n / n"] = stats::summarize(fractions);
    out.report.verdicts.push_back(mean_verdict("mean G_n / n = exact mean (n = 10^5, c = 1)",
                                               stats::mean_estimate(fractions), exact_mean_root_fraction(n, p)));
    return out;
}

// --- 3 ---------------------------------------------------------------------

CriterionOutcome criterion_3(const Context& ctx)
{
    CriterionOutcome out;
    constexpr std::size_t kDraws = 1000000;
    constexpr std::size_t kBins = 100;
    // Draws are split over fixed blocks so that the result is independent of workers.
    constexpr std::size_t kBlocks = 100;
    const auto blocks = run_replicas(
        [](Stream& rng) {
            std::vector<double> counts(kBins + 1, 0.0);
            for (std::size_t i = 0; i < kDraws / kBlocks; ++i) {
                const auto xi = sample_xi(rng);
                counts[std::min<std::uint64_t>(xi, kBins + 1) - 1] += 1.0;
            }
            return counts;
        },
        std::vector<std::string>(kBins + 1, "count"), kBlocks, ctx.seed_of("3/xi"), ctx.workers);
    std::vector<double> counts(kBins + 1, 0.0);
    for (const auto& row : blocks.rows) {
        for (std::size_t j = 0; j <= kBins; ++j) {
            counts[j] += row[j];
        }
    }
    const double total = static_cast<double>(kDraws);
    double chi2 = 0.0;
    for (std::size_t j = 1; j <= kBins + 1; ++j) {
        const double prob = j <= kBins ? 1.0 / (static_cast<double>(j) * static_cast<double>(j + 1))
                                       : 1.0 / static_cast<double>(kBins + 1);
        const double expected = total * prob;
        chi2 += (counts[j - 1] - expected) * (counts[j - 1] - expected) / expected;
    }
    const double p_value = stats::chi_square_survival(chi2, static_cast<double>(kBins));
    out.report.verdicts.push_back({"chi-square of xi over 1..100 and tail", p_value >= kTwoSampleLevel, p_value,
                                   kTwoSampleLevel, "p-value >= level"});
    double tail = total;
    double outside = 0.0;
    double worst = 0.0;
    for (std::size_t j = 1; j <= kBins; ++j) {
        const double target = 1.0 / static_cast<double>(j);
        const double empirical = tail / total;
        const double band = 4.0 * std::sqrt(target * (1.0 - target) / total);
        outside += std::fabs(empirical - target) > band;
        worst = std::max(worst, band > 0.0 ? std::fabs(empirical - target) / band : 0.0);
        tail -= counts[j - 1];
    }
    out.report.verdicts.push_back(count_verdict("P(xi >= j) = 1/j within 4 binomial standard errors, j <= 100",
                                                outside));
    out.report.verdicts.push_back({"largest tail deviation in band units", worst <= 1.0, worst, 1.0,
                                   "value <= tolerance"});
    return out;
}

// --- 4 ---------------------------------------------------------------------

CriterionOutcome criterion_4(const Context& ctx)
{
    CriterionOutcome out;
    std::vector<double> grid;
    for (int i = 1; i <= 9; ++i) {
        grid.push_back(i / 10.0);
    }
    for (double m : {0.5, 1.0, 5.0}) {
        const std::string label = "Z_m, m = " + std::to_string(m).substr(0, 3);
        const auto draws = replicate([m](Stream& rng) { return as_double(sample_ld_discrete(m, rng)); }, 100000,
                                     ctx.seed_of("4/" + label), ctx.workers);
        TransformSpec spec{TransformSpec::Kind::generating, label + " gf", grid,
                           [m](double s) { return std::complex<double>(gf_discrete(m, s)); }};
        out.report.merge(compare(label, draws, spec));
    }
    return out;
}

// --- 5 ---------------------------------------------------------------------

CriterionOutcome criterion_5(const Context& ctx)
{
    CriterionOutcome out;
    const auto coupled = run_replicas(
        [](Stream& rng) {
            const auto run = coupled_walk_isolation(10000, rng);
            double violations = 0;
            for (std::size_t l = 0; l < run.first_passage; ++l) {
                violations += run.trace.partials[l] != run.walk[l];
            }
            return std::vector<double>{violations, static_cast<double>(run.first_passage)};
        },
        {"violations", "first_passage"}, 10000, ctx.seed_of("5/coupled"), ctx.workers);
    const auto v = coupled.column("violations");
    out.report.verdicts.push_back(count_verdict("D_k(l) = S_l for l < N(k) on 10^4 runs, k = 10^4",
                                                std::accumulate(v.begin(), v.end(), 0.0)));
    out.report.sample_summary["N(k)"] = stats::summarize(coupled.column("first_passage"));

    auto functionals = [](const IsolationTrace& t) {
        return std::vector<double>{static_cast<double>(t.steps()), as_double(t.cuts.front()),
                                   as_double(*std::max_element(t.cuts.begin(), t.cuts.end()))};
    };
    const std::vector<std::string> columns = {"steps", "first_cut", "largest_cut"};
    const auto explicit_runs = run_replicas(
        [&](Stream& rng) { return functionals(meir_moon_explicit(build_rrt(1000, rng), rng)); }, columns, 10000,
        ctx.seed_of("5/explicit"), ctx.workers);
    const auto distributional = run_replicas(
        [&](Stream& rng) { return functionals(meir_moon_distributional(1000, rng)); }, columns, 10000,
        ctx.seed_of("5/distributional"), ctx.workers);
    for (const auto& column : columns) {
        out.report.merge(compare("isolation " + column + ", explicit vs distributional",
                                 explicit_runs.column(column), distributional.column(column)));
    }
    return out;
}

// --- 6 ---------------------------------------------------------------------

CriterionOutcome criterion_6(const Context& ctx)
{
    CriterionOutcome out;
    const double c = 1.0;
    const GermSpec base = GermSpec::standalone(10000, c);
    const auto clock = replicate([&](Stream& rng) { return as_double(germ_delta(base, rng, GermRoute::clock_cutoff)); },
                                 10000, ctx.seed_of("6/clock"), ctx.workers);
    const auto direct = replicate(
        [&](Stream& rng) { return as_double(germ_delta(base, rng, GermRoute::direct_percolation)); }, 10000,
        ctx.seed_of("6/direct"), ctx.workers);
    out.report.merge(compare("Delta_k clock vs direct, k = 10^4", clock, direct));

    auto limit = replicate(
        [](Stream& rng) { return sample_ld_continuous(ContinuousMethod::stable_transform, rng); }, 100000,
        ctx.seed_of("6/limit"), ctx.workers);
    for (double& z : limit) {
        z = c * (z + std::log(c));
    }
    std::vector<stats::KsResult> distances;
    std::vector<std::string> rungs;
    for (std::size_t k : {10000u, 100000u, 1000000u}) {
        const GermSpec spec = GermSpec::standalone(k, c);
        const LimitParams lp{static_cast<double>(k), c, 0.0};
        const auto statistic = replicate(
            [&](Stream& rng) {
                return limit_statistic(LimitStatisticKind::proposition1_germ,
                                       as_double(germ_delta(spec, rng, GermRoute::clock_cutoff)), lp);
            },
            10000, ctx.seed_of("6/trend/" + std::to_string(k)), ctx.workers);
        distances.push_back(stats::ks_two_sample(statistic, limit));
        rungs.push_back("k = " + std::to_string(k));
    }
    add_trend(out.report, "germ statistic vs c(Z + ln c)", rungs, distances);
    return out;
}

// --- 7 ---------------------------------------------------------------------

CriterionOutcome criterion_7(const Context& ctx)
{
    CriterionOutcome out;
    const double c = 1.0;
    {
        const std::size_t n = 100000;
        const double p = 1.0 - c / std::log(static_cast<double>(n));
        const auto pipeline = replicate([&](Stream& rng) { return as_double(run_pipeline(n, c, rng).clones); },
                                        10000, ctx.seed_of("7/pipeline"), ctx.workers);
        const auto direct = replicate(
            [&](Stream& rng) { return as_double(decompose(build_marked(n, p, rng)).root_cluster_size); }, 10000,
            ctx.seed_of("7/direct"), ctx.workers);
        out.report.merge(compare("G_n pipeline vs direct, n = 10^5", pipeline, direct));
    }
    auto limit = replicate(
        [](Stream& rng) { return sample_ld_continuous(ContinuousMethod::stable_transform, rng); }, 200000,
        ctx.seed_of("7/limit"), ctx.workers);
    for (double& z : limit) {
        z = -c * std::exp(-c) * (z + std::log(c));
    }
    std::vector<stats::KsResult> distances;
    std::vector<std::string> rungs;
    for (std::size_t n : {10000u, 100000u, 1000000u}) {
        const LimitParams lp{static_cast<double>(n), c, 0.0};
        const auto statistic = replicate(
            [&](Stream& rng) {
                return limit_statistic(LimitStatisticKind::theorem1_G, as_double(run_pipeline(n, c, rng).clones), lp);
            },
            20000, ctx.seed_of("7/trend/" + std::to_string(n)), ctx.workers);
        distances.push_back(stats::ks_two_sample(statistic, limit));
        rungs.push_back("n = " + std::to_string(n));
    }
    add_trend(out.report, "giant statistic vs -c e^-c (Z + ln c)", rungs, distances);
    return out;
}

// --- 8 ---------------------------------------------------------------------

CriterionOutcome criterion_8(const Context& ctx)
{
    CriterionOutcome out;
    const RegularParams params{2, 10000, 1.0};
    const std::size_t k = 10;
    const auto rows = run_replicas(
        [&](Stream& rng) {
            const auto levels = simulate_levels(params, k, rng, true);
            return std::vector<double>{as_double(levels.disconnected[k]), as_double(levels.sigma[k])};
        },
        {"nabla", "sigma"}, 10000, ctx.seed_of("8/levels"), ctx.workers);
    const auto expected = expected_counts(params, k);
    out.report.verdicts.push_back(
        mean_verdict("mean nabla_k = d^k (1 - e^{-ck/h})", stats::mean_estimate(rows.column("nabla")),
                     expected.disconnected));
    out.report.verdicts.push_back(mean_verdict("mean sigma_k = k d^k (1 - e^{-c/h})",
                                               stats::mean_estimate(rows.column("sigma")), expected.sigma));
    return out;
}

// --- 9 ---------------------------------------------------------------------

CriterionOutcome criterion_9(const Context&)
{
    CriterionOutcome out;
    const std::array<std::pair<std::size_t, std::size_t>, 3> ladder = {{{1u << 10, 40}, {1u << 14, 60}, {1u << 20, 80}}};
    constexpr double kFinalTolerance = 1e-2;
    for (double a : {0.5, 1.0, 2.0}) {
        std::vector<double> residuals;
        for (const auto& [h, k] : ladder) {
            const double drift = a * (static_cast<double>(k) - static_cast<double>(floor_log(2, h)));
            residuals.push_back(std::fabs(kappa(2, k, h, 1.0, a) - drift + psi(2, 0.0, a)));
        }
        const std::string tag = "a = " + std::to_string(a).substr(0, 3);
        for (std::size_t i = 1; i < residuals.size(); ++i) {
            out.report.verdicts.push_back({"residual decreases, " + tag + ", rung " + std::to_string(i + 1),
                                           residuals[i] < residuals[i - 1], residuals[i], residuals[i - 1],
                                           "value < tolerance (strict decrease)"});
        }
        out.report.verdicts.push_back({"final residual, " + tag, residuals.back() <= kFinalTolerance,
                                       residuals.back(), kFinalTolerance, "value <= tolerance"});
    }
    return out;
}

// --- 10 --------------------------------------------------------------------

CriterionOutcome criterion_10(const Context& ctx)
{
    CriterionOutcome out;
    const auto draws =
        replicate([](Stream& rng) { return sample_levy(2, 0.0, 1.0, rng); }, 100000, ctx.seed_of("10/levy"), ctx.workers);
    TransformSpec laplace{TransformSpec::Kind::laplace, "L_0(1) Laplace transform", {0.5, 1.0, 2.0},
                          [](double a) { return std::complex<double>(std::exp(psi(2, 0.0, a))); }};
    out.report.merge(compare("L_0(1)", draws, laplace));
    const auto halves = replicate(
        [](Stream& rng) {
            const double first = sample_levy(2, 0.0, 0.5, rng);
            return first + sample_levy(2, 0.0, 0.5, rng);
        },
        100000, ctx.seed_of("10/halves"), ctx.workers);
    out.report.merge(compare("L_0(1/2) + L_0'(1/2) vs L_0(1)", halves, draws));
    return out;
}

// --- 11 --------------------------------------------------------------------

CriterionOutcome criterion_11(const Context& ctx)
{
    CriterionOutcome out;
    const double c = 1.0;
    auto limit = replicate([c](Stream& rng) { return std::exp(-c) * sample_levy(2, 0.0, c, rng); }, 2000000,
                           ctx.seed_of("11/limit"), ctx.workers);
    std::vector<stats::KsResult> distances;
    std::vector<std::string> rungs;
    for (int j : {8, 10, 12}) {
        const RegularParams params{2, std::size_t{1} << j, c};
        const auto statistic = replicate([&](Stream& rng) { return theorem2_sample(params, rng); }, 1000000,
                                         ctx.seed_of("11/trend/" + std::to_string(j)), ctx.workers);
        distances.push_back(stats::ks_two_sample(statistic, limit));
        rungs.push_back("h = 2^" + std::to_string(j));
    }
    add_trend(out.report, "regular statistic vs e^-c L_0(c)", rungs, distances);
    return out;
}

// --- 12 --------------------------------------------------------------------

CriterionOutcome criterion_12(const Context& ctx)
{
    CriterionOutcome out;
    {
        const std::size_t n = 2000;
        const double p = 0.8;
        const auto urn = replicate([&](Stream& rng) { return as_double(urn_black_count(n, p, rng)); }, 10000,
                                   ctx.seed_of("12/urn"), ctx.workers);
        const auto tree = replicate([&](Stream& rng) { return as_double(decompose(build_marked(n, p, rng)).disconnected); },
                                    10000, ctx.seed_of("12/tree"), ctx.workers);
        out.report.merge(compare("urn black count vs Delta_n", urn, tree));
    }
    {
        const std::size_t n = 100000;
        const double c = 1.0;
        const double ln_n = std::log(static_cast<double>(n));
        const double m = c * std::exp(-c) * static_cast<double>(n) / ln_n;
        const auto xn = replicate(
            [&](Stream& rng) { return as_double(*sample_cluster_atoms(c, ln_n / static_cast<double>(n), n, rng).xn); },
            10000, ctx.seed_of("12/xn"), ctx.workers);
        const auto zm = replicate([&](Stream& rng) { return as_double(sample_ld_discrete(m, rng)); }, 10000,
                                  ctx.seed_of("12/zm"), ctx.workers);
        out.report.merge(compare("X_n vs Z_m", xn, zm));
    }
    return out;
}

// --- 13 --------------------------------------------------------------------

// Replicas = 4 on every named experiment: 1 vs 4 workers, and a rerun.
ComparisonReport experiment_determinism(std::uint64_t seed)
{
    ComparisonReport report;
    for (const auto& name : experiment_names()) {
        if (name == "check") {
            continue;
        }
        ExperimentConfig config;
        config.experiment = name;
        config.seed = seed;
        config.parameters["replicas"] = 4;
        config.workers = 1;
        const auto serial = run_experiment(config);
        const auto again = run_experiment(config);
        config.workers = 4;
        const auto parallel = run_experiment(config);
        const auto csv = render(serial, OutputFormat::csv);
        const auto json = render(serial, OutputFormat::json);
        report.verdicts.push_back({name + ": samples with 1 and 4 workers are byte-identical",
                                   csv == render(parallel, OutputFormat::csv), 0.0, 0.0, "bytes equal"});
        report.verdicts.push_back({name + ": report with 1 and 4 workers is byte-identical",
                                   json == render(parallel, OutputFormat::json), 0.0, 0.0, "bytes equal"});
        report.verdicts.push_back({name + ": rerun with the same seed is byte-identical",
                                   csv == render(again, OutputFormat::csv) && json == render(again, OutputFormat::json),
                                   0.0, 0.0, "bytes equal"});
    }
    return report;
}

}  // namespace

const std::string& criterion_title(int id)
{
    require(id >= 1 && id <= kCriterionCount, "criterion id must lie in 1..13");
    return kTitles[static_cast<std::size_t>(id - 1)];
}

CriterionOutcome run_criterion(int id, std::uint64_t seed, std::size_t workers)
{
    const Context ctx{seed, workers};
    CriterionOutcome outcome;
    switch (id) {
        case 1: outcome = criterion_1(ctx); break;
        case 2: outcome = criterion_2(ctx); break;
        case 3: outcome = criterion_3(ctx); break;
        case 4: outcome = criterion_4(ctx); break;
        case 5: outcome = criterion_5(ctx); break;
        case 6: outcome = criterion_6(ctx); break;
        case 7: outcome = criterion_7(ctx); break;
        case 8: outcome = criterion_8(ctx); break;
        case 9: outcome = criterion_9(ctx); break;
        case 10: outcome = criterion_10(ctx); break;
        case 11: outcome = criterion_11(ctx); break;
        case 12: outcome = criterion_12(ctx); break;
        default: throw DomainError("criterion " + std::to_string(id) + " cannot run on its own");
    }
    outcome.id = id;
    outcome.title = criterion_title(id);
    outcome.report.config = {{"criterion", id}, {"seed", seed}};
    return outcome;
}

std::vector<CriterionOutcome> run_acceptance(const SuiteOptions& options, const ProgressFn& progress)
{
    std::vector<int> ids = options.only;
    if (ids.empty()) {
        ids.resize(kCriterionCount);
        std::iota(ids.begin(), ids.end(), 1);
    }
    for (int id : ids) {
        require(id >= 1 && id <= kCriterionCount, "criterion id must lie in 1..13");
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    std::vector<CriterionOutcome> outcomes;
    for (int id : ids) {
        if (id == kCriterionCount) {
            continue;
        }
        const auto start = std::chrono::steady_clock::now();
        outcomes.push_back(run_criterion(id, options.seed, options.workers));
        if (progress) {
            progress(outcomes.back(), std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
        }
    }
    if (ids.back() == kCriterionCount) {
        const auto start = std::chrono::steady_clock::now();
        CriterionOutcome determinism;
        determinism.id = kCriterionCount;
        determinism.title = criterion_title(kCriterionCount);
        determinism.report.config = {{"criterion", kCriterionCount}, {"seed", options.seed}};
        std::vector<int> rerun(ids.begin(), ids.end() - 1);
        if (rerun.empty()) {
            rerun.resize(kCriterionCount - 1);
            std::iota(rerun.begin(), rerun.end(), 1);
        }
        const std::size_t other_workers = options.workers == 4 ? 1 : 4;
        for (int id : rerun) {
            const auto second = run_criterion(id, options.seed, other_workers);
            const auto it = std::find_if(outcomes.begin(), outcomes.end(),
                                         [id](const CriterionOutcome& o) { return o.id == id; });
            const auto first = it != outcomes.end() ? it->report : run_criterion(id, options.seed, options.workers).report;
            determinism.report.verdicts.push_back(
                {"criterion " + std::to_string(id) + " report is byte-identical on a second run with "
                     + std::to_string(other_workers) + " workers",
                 to_json(first).dump() == to_json(second.report).dump(), 0.0, 0.0, "bytes equal"});
        }
        determinism.report.merge(experiment_determinism(options.seed));
        outcomes.push_back(std::move(determinism));
        if (progress) {
            progress(outcomes.back(), std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
        }
    }
    return outcomes;
}

nlohmann::json to_json(const std::vector<CriterionOutcome>& outcomes)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto& o : outcomes) {
        auto report = to_json(o.report);
        report["id"] = o.id;
        report["title"] = o.title;
        out.push_back(report);
    }
    return out;
}

}  // namespace pclab
