#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "pclab/error.hpp"
#include "pclab/percolation.hpp"
#include "pclab/recursive_tree.hpp"

using namespace pclab;

namespace {

// Union of kept edges by repeated relabeling until stable.
std::vector<std::uint64_t> component_sizes_by_relabeling(const std::vector<Vertex>& parent,
                                                         const std::vector<std::uint8_t>& removed, std::size_t n,
                                                         std::uint64_t& root_size)
{
    std::vector<std::size_t> label(n + 1);
    std::iota(label.begin(), label.end(), 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t v = 2; v <= n; ++v) {
            if (removed[v]) {
                continue;
            }
            const auto low = std::min(label[v], label[parent[v]]);
            if (label[v] != low || label[parent[v]] != low) {
                label[v] = label[parent[v]] = low;
                changed = true;
            }
        }
    }
    std::vector<std::uint64_t> count(n + 1, 0);
    for (std::size_t v = 1; v <= n; ++v) {
        ++count[label[v]];
    }
    root_size = count[1];
    std::vector<std::uint64_t> others;
    for (std::size_t v = 2; v <= n; ++v) {
        if (count[v] > 0) {
            others.push_back(count[v]);
        }
    }
    std::sort(others.begin(), others.end(), std::greater<>());
    return others;
}

MarkedTree marked_from(std::vector<Vertex> parents, std::vector<std::uint8_t> removed)
{
    return MarkedTree(RecursiveTree(std::move(parents)), std::move(removed), 0.5);
}

}  // namespace

TEST(Decompose, NoRemovedEdges)
{
    const auto parts = decompose(marked_from({1, 2, 1, 3}, {0, 0, 0, 0}));
    EXPECT_EQ(parts.root_cluster_size, 5u);
    EXPECT_EQ(parts.disconnected, 0u);
    EXPECT_TRUE(parts.ranked_sizes.empty());
}

TEST(Decompose, PathWithMiddleCut)
{
    const auto parts = decompose(marked_from({1, 2, 3}, {0, 1, 0}));
    EXPECT_EQ(parts.root_cluster_size, 2u);
    EXPECT_EQ(parts.ranked_sizes, (std::vector<std::uint64_t>{2}));
}

TEST(Decompose, StarWithTwoCuts)
{
    const auto parts = decompose(marked_from({1, 1, 1}, {1, 0, 1}));
    EXPECT_EQ(parts.root_cluster_size, 2u);
    EXPECT_EQ(parts.ranked_sizes, (std::vector<std::uint64_t>{1, 1}));
}

TEST(Decompose, NestedCutsRankDescending)
{
    // 1-2-3-4-5-6 path with cuts at 2 and 5: root {1}, {2,3,4}, {5,6}.
    const auto parts = decompose(marked_from({1, 2, 3, 4, 5}, {1, 0, 0, 1, 0}));
    EXPECT_EQ(parts.root_cluster_size, 1u);
    EXPECT_EQ(parts.disconnected, 5u);
    EXPECT_EQ(parts.ranked_sizes, (std::vector<std::uint64_t>{3, 2}));
}

TEST(Decompose, ExhaustiveAgainstRelabeling)
{
    for (std::size_t n = 1; n <= 7; ++n) {
        const std::size_t edges = n - 1;
        std::vector<Vertex> parents(edges, 1);
        while (true) {
            for (std::uint32_t mask = 0; mask < (1u << edges); ++mask) {
                std::vector<std::uint8_t> flags(edges);
                for (std::size_t e = 0; e < edges; ++e) {
                    flags[e] = (mask >> e) & 1u;
                }
                const auto parts = decompose(marked_from(parents, flags));
                std::vector<Vertex> table(n + 1, 0);
                std::vector<std::uint8_t> removed(n + 1, 0);
                std::copy(parents.begin(), parents.end(), table.begin() + 2);
                std::copy(flags.begin(), flags.end(), removed.begin() + 2);
                std::uint64_t root = 0;
                const auto others = component_sizes_by_relabeling(table, removed, n, root);
                ASSERT_EQ(parts.root_cluster_size, root);
                ASSERT_EQ(parts.ranked_sizes, others);
            }
            std::size_t i = 0;
            while (i < parents.size() && parents[i] == i + 1) {
                parents[i] = 1;
                ++i;
            }
            if (i == parents.size()) {
                break;
            }
            ++parents[i];
        }
    }
}

TEST(Decompose, ConservationOnRandomTrees)
{
    Stream rng(21);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng.below(3000);
        const auto parts = decompose(build_marked(n, rng.uniform(), rng));
        const auto off_root = std::accumulate(parts.ranked_sizes.begin(), parts.ranked_sizes.end(), std::uint64_t{0});
        ASSERT_EQ(parts.root_cluster_size + off_root, n);
        ASSERT_EQ(parts.disconnected, off_root);
        ASSERT_TRUE(std::is_sorted(parts.ranked_sizes.begin(), parts.ranked_sizes.end(), std::greater<>()));
    }
}

TEST(Decompose, AddingACutNeverGrowsRoot)
{
    Stream rng(22);
    const auto tree = build_rrt(2000, rng);
    std::vector<Vertex> parents(tree.parent_table().begin() + 2, tree.parent_table().end());
    std::vector<std::uint8_t> flags(parents.size(), 0);
    std::uint64_t previous = 2000;
    for (int step = 0; step < 200; ++step) {
        flags[rng.below(flags.size())] = 1;
        const auto size = decompose(marked_from(parents, flags)).root_cluster_size;
        ASSERT_LE(size, previous);
        previous = size;
    }
}

TEST(Decompose, PrefixMutantsEndpoints)
{
    Stream rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const auto marked = build_marked(500, 0.9, rng);
        EXPECT_EQ(decompose(marked, 500).prefix_mutants.value(), decompose(marked).disconnected);
        EXPECT_EQ(decompose(marked, 1).prefix_mutants.value(), 0u);
    }
    EXPECT_FALSE(decompose(build_marked(10, 0.5, rng)).prefix_mutants.has_value());
}

TEST(Decompose, PrefixMutantsSmallCase)
{
    // 1-2, 2-3, 1-4, 4-5; edges 2 and 5 removed. Early cuts (label <= 3): edge 2 only.
    const auto marked = marked_from({1, 2, 1, 4}, {1, 0, 0, 1});
    EXPECT_EQ(decompose(marked, 3).prefix_mutants.value(), 2u);
    EXPECT_EQ(decompose(marked, 5).prefix_mutants.value(), 3u);
    EXPECT_THROW(decompose(marked, 6), DomainError);
    EXPECT_THROW(decompose(marked, 0), DomainError);
}

TEST(Decompose, ScratchEntryPointMatches)
{
    Stream rng(24);
    DecomposeScratch scratch;
    ClusterDecomposition reused;
    for (int trial = 0; trial < 20; ++trial) {
        const auto marked = build_marked(1 + rng.below(400), 0.8, rng);
        const std::size_t k = 1 + rng.below(marked.size());
        decompose_into(marked.tree().parent_table(), marked.removed_table(), k, scratch, reused);
        const auto fresh = decompose(marked, k);
        EXPECT_EQ(reused.root_cluster_size, fresh.root_cluster_size);
        EXPECT_EQ(reused.ranked_sizes, fresh.ranked_sizes);
        EXPECT_EQ(reused.prefix_mutants, fresh.prefix_mutants);
    }
}

TEST(LimitStatistic, PlugIns)
{
    const double n = 1e6;
    const double c = 0.7;
    const LimitParams params{n, c, 0.0};
    EXPECT_NEAR(limit_statistic(LimitStatisticKind::theorem1_G, std::exp(-c) * n, params),
                -c * std::exp(-c) * std::log(std::log(n)), 1e-9);
    EXPECT_NEAR(limit_statistic(LimitStatisticKind::proposition1_germ, 0.0, {1e4, c, 0.0}),
                -0.75 * c * std::log(1e4), 1e-12);
    EXPECT_NEAR(limit_statistic(LimitStatisticKind::cluster_rescale, n / std::log(n), params), 1.0, 1e-12);
    EXPECT_NEAR(limit_statistic(LimitStatisticKind::mutant_descent, 0.0, params), -3.0 * c * std::log(std::log(n)),
                1e-12);
    EXPECT_NEAR(limit_statistic(LimitStatisticKind::discrete_ld_center, 5.0, {5.0, 0.0, 0.0}), 1.0 - std::log(5.0),
                1e-15);
    EXPECT_NEAR(limit_statistic(LimitStatisticKind::walk_center, 30.0, {10.0, 0.0, 0.0}), 3.0 - std::log(10.0),
                1e-15);
}

TEST(LimitStatistic, DeltaFormMirrorsGiantStatistic)
{
    const double n = 1e5;
    const LimitParams params{n, 1.0, 0.0};
    for (double g : {1000.0, 36000.0, 80000.0}) {
        EXPECT_NEAR(limit_statistic(LimitStatisticKind::delta_form, n - g, params),
                    -limit_statistic(LimitStatisticKind::theorem1_G, g, params), 1e-9);
    }
}

TEST(LimitStatistic, RejectsTinySizes)
{
    EXPECT_THROW(limit_statistic(LimitStatisticKind::theorem1_G, 1.0, {2.0, 1.0, 0.0}), DomainError);
}
