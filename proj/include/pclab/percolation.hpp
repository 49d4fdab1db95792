#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pclab/recursive_tree.hpp"

namespace pclab {

struct ClusterDecomposition
{
    std::size_t n = 0;
    std::uint64_t root_cluster_size = 0;  // G_n
    std::uint64_t disconnected = 0;       // Delta_n = n - G_n
    std::vector<std::uint64_t> ranked_sizes;  // one per removed edge, nonincreasing
    std::optional<std::uint64_t> prefix_mutants;  // Delta_{k,n}
};

/*!
 * Split a marked tree into percolation clusters.
 *
 * Each vertex is labeled with its nearest cut ancestor in one forward pass
 * (itself when its own edge is removed, otherwise its parent's label), which
 * is valid because parent(i) < i. With prefix_k, also counts the vertices
 * whose branch carries a removed edge with child label <= prefix_k.
 */
ClusterDecomposition decompose(const MarkedTree& marked,
                               std::optional<std::size_t> prefix_k = std::nullopt);

//! Buffers reused across calls to decompose_into.
struct DecomposeScratch
{
    std::vector<Vertex> cut_root;
    std::vector<std::uint32_t> cluster_size;
};

/*!
 * Same as decompose, on raw 1-based tables (index 0 and 1 unused, length
 * n + 1) and without allocating once the buffers have grown.
 */
void decompose_into(std::span<const Vertex> parents, std::span<const std::uint8_t> removed,
                    std::optional<std::size_t> prefix_k, DecomposeScratch& scratch,
                    ClusterDecomposition& result);

enum class LimitStatisticKind {
    theorem1_G,
    delta_form,
    proposition1_germ,
    mutant_descent,
    cluster_rescale,
    discrete_ld_center,
    walk_center,
    theorem2_regular,
};

//! Parameters of the affine rescalings. `size` is n, k, l, h or m depending on the kind.
struct LimitParams
{
    double size = 0.0;
    double c = 0.0;
    double d = 0.0;
};

/*!
 * Rescaled statistic for a raw count:
 *  - theorem1_G:        (G/n - e^-c) ln n - c e^-c ln ln n
 *  - delta_form:        (D/n - (1 - e^-c)) ln n + c e^-c ln ln n
 *  - proposition1_germ: k^-3/4 D - (3/4) c ln k
 *  - mutant_descent:    (ln n / n) D - 3c ln ln n
 *  - cluster_rescale:   (ln n / n) C
 *  - discrete_ld_center: Z/m - ln m
 *  - walk_center:       S/l - ln l
 *  - theorem2_regular:  h (d^-h N - (1 - e^-c)) + c e^-c log_d h
 */
double limit_statistic(LimitStatisticKind kind, double raw, const LimitParams& params);

const char* to_string(LimitStatisticKind kind);

}  // namespace pclab
