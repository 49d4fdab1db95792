#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "pclab/error.hpp"
#include "pclab/percolation.hpp"
#include "pclab/recursive_tree.hpp"
#include "pclab/replicas.hpp"
#include "pclab/stats.hpp"

using namespace pclab;

TEST(RecursiveTree, SingleVertexHasNoEdges)
{
    Stream rng(1);
    const auto tree = build_rrt(1, rng);
    EXPECT_EQ(tree.size(), 1u);
    EXPECT_EQ(tree.edge_count(), 0u);
}

TEST(RecursiveTree, SecondVertexHangsFromRoot)
{
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Stream rng(seed);
        EXPECT_EQ(build_rrt(2, rng).parent(2), 1u);
    }
}

TEST(RecursiveTree, ThirdVertexParentIsFair)
{
    const auto hits = replicate(
        [](Stream& rng) { return build_rrt(3, rng).parent(3) == 1 ? 1.0 : 0.0; }, 10000, 11);
    EXPECT_TRUE(stats::mean_estimate(hits).within(0.5));
}

TEST(RecursiveTree, ParentsPrecedeChildren)
{
    Stream rng(2);
    const auto tree = build_rrt(5000, rng);
    for (Vertex v = 2; v <= tree.size(); ++v) {
        EXPECT_GE(tree.parent(v), 1u);
        EXPECT_LT(tree.parent(v), v);
    }
}

TEST(RecursiveTree, RejectsBadParent)
{
    EXPECT_THROW(RecursiveTree({1, 3}), DomainError);
    EXPECT_THROW(RecursiveTree({0}), DomainError);
    EXPECT_NO_THROW(RecursiveTree({1, 2, 1}));
}

TEST(RecursiveTree, DepthRecursion)
{
    Stream rng(3);
    const auto tree = build_rrt(2000, rng);
    const auto depths = all_depths(tree);
    EXPECT_EQ(depth(tree, 1), 0u);
    for (Vertex v = 2; v <= tree.size(); ++v) {
        ASSERT_EQ(depths[v], depths[tree.parent(v)] + 1);
        ASSERT_EQ(depth(tree, v), depths[v]);
    }
    EXPECT_EQ(depth(RecursiveTree({1}), 2), 1u);
}

// E depth(n) = H_{n-1}; H_99 = 5.17737751763962.
TEST(RecursiveTree, MeanDepthIsHarmonic)
{
    const auto depths = replicate(
        [](Stream& rng) { return static_cast<double>(depth(build_rrt(100, rng), 100)); }, 20000, 12);
    EXPECT_TRUE(stats::mean_estimate(depths).within(5.17737751763962));
}

TEST(BuildMarked, ExtremeProbabilities)
{
    Stream rng(4);
    EXPECT_EQ(build_marked(50, 1.0, rng).removed_count(), 0u);
    const auto all = build_marked(5, 0.0, rng);
    EXPECT_EQ(all.removed_count(), 4u);
    for (Vertex e = 2; e <= 5; ++e) {
        EXPECT_TRUE(all.removed(e));
    }
    EXPECT_THROW(build_marked(5, 1.5, rng), DomainError);
    EXPECT_THROW(build_marked(5, -0.1, rng), DomainError);
}

TEST(BuildMarked, RemovedCountIsBinomial)
{
    const auto counts = replicate(
        [](Stream& rng) { return static_cast<double>(build_marked(1000, 0.9, rng).removed_count()); }, 10000, 13);
    const auto estimate = stats::mean_estimate(counts);
    EXPECT_TRUE(estimate.within(99.9)) << estimate.mean;
}

TEST(BuildMarked, OrderModesAgreeInLaw)
{
    auto root_size = [](MarkOrder order) {
        return [order](Stream& rng) {
            return static_cast<double>(decompose(build_marked(300, 0.95, rng, order)).root_cluster_size);
        };
    };
    const auto during = replicate(root_size(MarkOrder::during_growth), 10000, 14);
    const auto after = replicate(root_size(MarkOrder::after_growth), 10000, 15);
    EXPECT_GE(stats::ks_two_sample(during, after).p_value, 1e-3);
}

// Values from exact rational enumeration of every tree and mark pattern at p = 3/10.
TEST(ExactMean, MatchesEnumeration)
{
    const double frozen[] = {1.0, 0.65, 0.49833333333333335, 0.411125, 0.3535675, 0.3123179583333333};
    for (std::size_t n = 1; n <= 6; ++n) {
        EXPECT_NEAR(exact_mean_root_fraction(n, 0.3), frozen[n - 1], 1e-15) << n;
    }
}

TEST(ExactMean, ClosedFormsAndBounds)
{
    for (std::size_t n : {1u, 10u, 1000u}) {
        EXPECT_DOUBLE_EQ(exact_mean_root_fraction(n, 1.0), 1.0);
    }
    for (double p : {0.0, 0.25, 0.9}) {
        EXPECT_DOUBLE_EQ(exact_mean_root_fraction(2, p), (1.0 + p) / 2.0);
    }
    double previous = 0.0;
    for (double p = 0.0; p <= 1.0; p += 0.05) {
        const double value = exact_mean_root_fraction(500, p);
        EXPECT_GE(value, previous);
        EXPECT_GE(value, 1.0 / 500.0 - 1e-15);
        EXPECT_LE(value, 1.0);
        previous = value;
    }
}

TEST(ExactMean, ApproachesInverseE)
{
    auto gap = [](double n) {
        return std::abs(exact_mean_root_fraction(static_cast<std::size_t>(n), 1.0 - 1.0 / std::log(n))
                        - std::exp(-1.0));
    };
    EXPECT_GT(gap(1e4), gap(1e6));
    EXPECT_GT(gap(1e6), gap(1e8));
}

TEST(ExactMean, AgreesWithMonteCarlo)
{
    const std::size_t n = 10000;
    const double p = 1.0 - 1.0 / std::log(static_cast<double>(n));
    const auto fractions = replicate(
        [&](Stream& rng) {
            return static_cast<double>(decompose(build_marked(n, p, rng)).root_cluster_size) / n;
        },
        4000, 16);
    EXPECT_TRUE(stats::mean_estimate(fractions).within(exact_mean_root_fraction(n, p)));
}

TEST(Urn, ExtremeProbabilities)
{
    Stream rng(5);
    EXPECT_EQ(urn_black_count(100, 1.0, rng), 0u);
    EXPECT_EQ(urn_black_count(7, 0.0, rng), 6u);
}

TEST(Urn, SameLawAsDisconnectedCount)
{
    const auto urn = replicate(
        [](Stream& rng) { return static_cast<double>(urn_black_count(2000, 0.8, rng)); }, 4000, 17);
    const auto tree = replicate(
        [](Stream& rng) { return static_cast<double>(decompose(build_marked(2000, 0.8, rng)).disconnected); },
        4000, 18);
    EXPECT_GE(stats::ks_two_sample(urn, tree).p_value, 1e-3);
}

TEST(Dump, ByteLayout)
{
    // 1 <- 2, 1 <- 3, 2 <- 4; edges 3 and 4 removed.
    const MarkedTree marked(RecursiveTree({1, 1, 2}), {0, 1, 1}, 0.25);
    std::ostringstream out;
    write_marked_tree(out, marked);
    const std::string bytes = out.str();
    ASSERT_EQ(bytes.size(), 5u + 8u + 8u + 3u * 8u + 1u);
    EXPECT_EQ(bytes.substr(0, 5), "PCLB1");
    EXPECT_EQ(static_cast<unsigned char>(bytes[5]), 4u);
    EXPECT_EQ(bytes.substr(6, 7), std::string(7, '\0'));
    double p = 0.0;
    std::memcpy(&p, bytes.data() + 13, sizeof p);
    EXPECT_EQ(p, 0.25);
    const unsigned char parents[] = {1, 1, 2};
    for (int i = 0; i < 3; ++i) {
        EXPECT_EQ(static_cast<unsigned char>(bytes[21 + 8 * i]), parents[i]);
    }
    EXPECT_EQ(static_cast<unsigned char>(bytes.back()), 0b110u);
}

TEST(Dump, RoundTrip)
{
    Stream rng(6);
    for (std::size_t n : {1u, 2u, 9u, 17u, 4096u}) {
        const auto marked = build_marked(n, 0.7, rng);
        std::stringstream buffer;
        write_marked_tree(buffer, marked);
        const auto back = read_marked_tree(buffer);
        ASSERT_EQ(back.size(), n);
        EXPECT_EQ(back.survival_prob(), 0.7);
        EXPECT_TRUE(std::ranges::equal(back.tree().parent_table(), marked.tree().parent_table()));
        EXPECT_TRUE(std::ranges::equal(back.removed_table(), marked.removed_table()));
    }
}

TEST(Dump, RejectsDamagedInput)
{
    Stream rng(7);
    std::ostringstream out;
    write_marked_tree(out, build_marked(20, 0.5, rng));
    const std::string bytes = out.str();

    std::istringstream truncated(bytes.substr(0, bytes.size() - 1));
    EXPECT_THROW(read_marked_tree(truncated), DomainError);

    std::string wrong = bytes;
    wrong[4] = '2';
    std::istringstream bad_magic(wrong);
    EXPECT_THROW(read_marked_tree(bad_magic), DomainError);
}
