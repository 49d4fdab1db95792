#include <cmath>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "pclab/error.hpp"
#include "pclab/recursive_tree.hpp"
#include "pclab/replicas.hpp"
#include "pclab/root_isolation.hpp"
#include "pclab/stats.hpp"

using namespace pclab;

namespace {

std::vector<double> first_cut_indicator(std::size_t k, std::uint64_t size, bool explicit_tree, std::uint64_t seed)
{
    return replicate(
        [=](Stream& rng) {
            const auto trace = explicit_tree ? meir_moon_explicit(build_rrt(k, rng), rng)
                                             : meir_moon_distributional(k, rng);
            return trace.cuts.front() == size ? 1.0 : 0.0;
        },
        10000, seed);
}

}  // namespace

TEST(MeirMoon, TwoVerticesTakeOneStep)
{
    Stream rng(31);
    const auto trace = meir_moon_explicit(build_rrt(2, rng), rng);
    EXPECT_EQ(trace.cuts, (std::vector<std::uint64_t>{1}));
    EXPECT_TRUE(trace.isolated());
    EXPECT_EQ(meir_moon_distributional(2, rng).cuts, (std::vector<std::uint64_t>{1}));
}

TEST(MeirMoon, CutsConserveVertices)
{
    Stream rng(32);
    for (std::size_t k : {1u, 2u, 3u, 50u, 5000u}) {
        const auto a = meir_moon_explicit(build_rrt(k, rng), rng);
        const auto b = meir_moon_distributional(k, rng);
        EXPECT_EQ(std::accumulate(a.cuts.begin(), a.cuts.end(), std::uint64_t{0}), k - 1);
        EXPECT_EQ(std::accumulate(b.cuts.begin(), b.cuts.end(), std::uint64_t{0}), k - 1);
        EXPECT_EQ(a.partials.back(), k - 1);
        EXPECT_TRUE(a.isolated() && b.isolated());
    }
}

// From enumeration of the 2 trees on 3 vertices and their 2 edges: 3/4, 1/4.
TEST(MeirMoon, FirstCutLawAtThree)
{
    for (bool explicit_tree : {true, false}) {
        EXPECT_TRUE(stats::mean_estimate(first_cut_indicator(3, 1, explicit_tree, 33)).within(0.75));
        EXPECT_TRUE(stats::mean_estimate(first_cut_indicator(3, 2, explicit_tree, 34)).within(0.25));
    }
}

// Enumeration of the 6 trees on 4 vertices and 3 edges: 2/3, 2/9, 1/9.
TEST(MeirMoon, FirstCutLawAtFour)
{
    const double frozen[] = {2.0 / 3.0, 2.0 / 9.0, 1.0 / 9.0};
    for (std::uint64_t j = 1; j <= 3; ++j) {
        EXPECT_NEAR(isolation_cut_probability(4, j), frozen[j - 1], 1e-15);
        EXPECT_TRUE(stats::mean_estimate(first_cut_indicator(4, j, true, 35 + j)).within(frozen[j - 1]));
    }
}

TEST(MeirMoon, ConditionalLawNormalizes)
{
    for (std::uint64_t m : {2ull, 3ull, 10ull, 1000ull, 1000000ull}) {
        double total = 0.0;
        for (std::uint64_t j = m - 1; j >= 1; --j) {
            total += isolation_cut_probability(m, j);
        }
        EXPECT_NEAR(total, 1.0, 1e-12) << m;
    }
    EXPECT_DOUBLE_EQ(isolation_cut_probability(2, 1), 1.0);
    EXPECT_EQ(isolation_cut_probability(5, 5), 0.0);
    EXPECT_THROW(isolation_cut_probability(1, 1), DomainError);
}

TEST(MeirMoon, FormsAgreeInLaw)
{
    auto steps = [](bool explicit_tree) {
        return [explicit_tree](Stream& rng) {
            const auto trace = explicit_tree ? meir_moon_explicit(build_rrt(1000, rng), rng)
                                             : meir_moon_distributional(1000, rng);
            return static_cast<double>(trace.steps());
        };
    };
    const auto a = replicate(steps(true), 5000, 39);
    const auto b = replicate(steps(false), 5000, 40);
    EXPECT_GE(stats::ks_two_sample(a, b).p_value, 1e-3);
}

TEST(MeirMoon, StepTruncation)
{
    Stream rng(41);
    const auto trace = meir_moon_distributional(100000, rng, 5);
    EXPECT_EQ(trace.steps(), 5u);
}

TEST(Coupling, WalkMatchesPartialsBeforePassage)
{
    Stream rng(42);
    for (int run = 0; run < 2000; ++run) {
        const std::size_t k = 2 + rng.below(20000);
        const auto coupled = coupled_walk_isolation(k, rng);
        ASSERT_GE(coupled.walk[coupled.first_passage], k);
        ASSERT_LT(coupled.walk[coupled.first_passage - 1], k);
        for (std::size_t l = 0; l < coupled.first_passage; ++l) {
            ASSERT_EQ(coupled.trace.partials[l], coupled.walk[l]);
        }
        ASSERT_TRUE(coupled.trace.isolated());
    }
}

TEST(Coupling, TwoVerticesForceSingleCut)
{
    Stream rng(43);
    for (int run = 0; run < 100; ++run) {
        const auto coupled = coupled_walk_isolation(2, rng);
        EXPECT_EQ(coupled.trace.cuts, (std::vector<std::uint64_t>{1}));
        EXPECT_GE(coupled.first_passage, 1u);
        if (coupled.walk[1] == 1) {
            EXPECT_GE(coupled.first_passage, 2u);
        }
    }
}

TEST(Schedule, TimesStartAtOriginAndIncrease)
{
    Stream rng(44);
    const auto trace = percolation_schedule(meir_moon_distributional(3000, rng), 3000, rng);
    EXPECT_EQ(trace.time_of(0), 0.0);
    for (std::size_t l = 1; l <= trace.steps(); ++l) {
        ASSERT_GT(trace.time_of(l), trace.time_of(l - 1));
    }
    EXPECT_TRUE(std::isinf(trace.time_of(trace.steps() + 1)));
    EXPECT_THROW(percolation_schedule(trace, 2999, rng), DomainError);
}

TEST(Schedule, FirstCutWaitMean)
{
    const std::size_t k = 400;
    const auto waits = replicate(
        [](Stream& rng) { return percolation_schedule(meir_moon_distributional(k, rng), k, rng).time_of(1); },
        20000, 45);
    EXPECT_TRUE(stats::mean_estimate(waits).within(std::pow(400.0, 0.25) / 399.0));
}

TEST(Germ, SurvivalParametrizations)
{
    EXPECT_DOUBLE_EQ(GermSpec::standalone(10000, 1.0).survival(), 0.9);
    const auto pipeline = GermSpec::pipeline(100000, 1.0);
    EXPECT_EQ(pipeline.k, static_cast<std::size_t>(std::floor(std::pow(std::log(1e5), 4.0))));
    EXPECT_DOUBLE_EQ(pipeline.survival(), 1.0 - 1.0 / std::log(1e5));
    EXPECT_THROW(GermSpec::standalone(16, 2.0).survival(), DomainError);
    EXPECT_NEAR(GermSpec::standalone(10000, 1.0).cutoff_time(), -10.0 * std::log(0.9), 1e-12);
}

TEST(Germ, NoTimeNoCuts)
{
    Stream rng(46);
    const auto spec = GermSpec::standalone(5000, 0.0);
    EXPECT_EQ(spec.cutoff_time(), 0.0);
    EXPECT_EQ(germ_delta(spec, rng, GermRoute::clock_cutoff), 0u);
    EXPECT_EQ(germ_delta(spec, rng, GermRoute::direct_percolation), 0u);
}

TEST(Germ, MeanMatchesExactFormula)
{
    const auto spec = GermSpec::standalone(10000, 1.0);
    const double target = 10000.0 * (1.0 - exact_mean_root_fraction(10000, spec.survival()));
    for (auto route : {GermRoute::clock_cutoff, GermRoute::direct_percolation}) {
        const auto deltas = replicate(
            [&](Stream& rng) { return static_cast<double>(germ_delta(spec, rng, route)); }, 3000, 47);
        EXPECT_TRUE(stats::mean_estimate(deltas).within(target)) << static_cast<int>(route);
    }
}

TEST(Germ, RoutesAgreeInLaw)
{
    const auto spec = GermSpec::standalone(2000, 1.0);
    auto draw = [&](GermRoute route) {
        return [&spec, route](Stream& rng) { return static_cast<double>(germ_delta(spec, rng, route)); };
    };
    const auto clock = replicate(draw(GermRoute::clock_cutoff), 5000, 48);
    const auto direct = replicate(draw(GermRoute::direct_percolation), 5000, 49);
    EXPECT_GE(stats::ks_two_sample(clock, direct).p_value, 1e-3);
}
