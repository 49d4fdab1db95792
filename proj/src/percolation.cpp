#include "pclab/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "pclab/error.hpp"

namespace pclab {

void decompose_into(std::span<const Vertex> parents, std::span<const std::uint8_t> removed,
                    std::optional<std::size_t> prefix_k, DecomposeScratch& scratch,
                    ClusterDecomposition& result)
{
    require(!parents.empty() && removed.size() == parents.size(), "parent and removal tables must match");
    const std::size_t n = parents.size() - 1;
    if (prefix_k) {
        require(*prefix_k >= 1 && *prefix_k <= n,
                [k = *prefix_k] { return "prefix bound " + std::to_string(k) + " must lie in [1, n]"; });
    }
    // cut_root[i] == 0 means vertex i is in the root cluster.
    auto& cut_root = scratch.cut_root;
    auto& cluster_size = scratch.cluster_size;
    cut_root.assign(n + 1, 0);
    cluster_size.assign(n + 1, 0);
    std::uint64_t root_size = 1;
    for (std::size_t i = 2; i <= n; ++i) {
        const Vertex label = removed[i] ? static_cast<Vertex>(i) : cut_root[parents[i]];
        cut_root[i] = label;
        if (label == 0) {
            ++root_size;
        }
        else {
            ++cluster_size[label];
        }
    }

    result.n = n;
    result.root_cluster_size = root_size;
    result.disconnected = n - root_size;
    result.ranked_sizes.clear();
    result.prefix_mutants.reset();
    for (std::size_t i = 2; i <= n; ++i) {
        if (removed[i]) {
            result.ranked_sizes.push_back(cluster_size[i]);
        }
    }
    std::sort(result.ranked_sizes.begin(), result.ranked_sizes.end(), std::greater<>());

    if (prefix_k) {
        // Reuse cluster_size as a 0/1 "branch carries an early cut" flag.
        const std::size_t k = *prefix_k;
        std::uint64_t mutants = 0;
        cluster_size[1] = 0;
        for (std::size_t i = 2; i <= n; ++i) {
            const bool early = (removed[i] && i <= k) || cluster_size[parents[i]] != 0;
            cluster_size[i] = early ? 1 : 0;
            mutants += early;
        }
        result.prefix_mutants = mutants;
    }
}

ClusterDecomposition decompose(const MarkedTree& marked, std::optional<std::size_t> prefix_k)
{
    DecomposeScratch scratch;
    ClusterDecomposition result;
    decompose_into(marked.tree().parent_table(), marked.removed_table(), prefix_k, scratch, result);
    return result;
}

namespace {

double checked_log_log(double size, const char* name)
{
    require(size >= 3.0, std::string(name) + " must be at least 3 for ln ln to be defined");
    return std::log(std::log(size));
}

}  // namespace

double limit_statistic(LimitStatisticKind kind, double raw, const LimitParams& params)
{
    const double x = params.size;
    const double c = params.c;
    switch (kind) {
        case LimitStatisticKind::theorem1_G: {
            const double ll = checked_log_log(x, "n");
            return (raw / x - std::exp(-c)) * std::log(x) - c * std::exp(-c) * ll;
        }
        case LimitStatisticKind::delta_form: {
            const double ll = checked_log_log(x, "n");
            return (raw / x - (1.0 - std::exp(-c))) * std::log(x) + c * std::exp(-c) * ll;
        }
        case LimitStatisticKind::proposition1_germ:
            require(x >= 3.0, "k must be at least 3");
            return std::pow(x, -0.75) * raw - 0.75 * c * std::log(x);
        case LimitStatisticKind::mutant_descent: {
            const double ll = checked_log_log(x, "n");
            return std::log(x) / x * raw - 3.0 * c * ll;
        }
        case LimitStatisticKind::cluster_rescale:
            require(x >= 3.0, "n must be at least 3");
            return std::log(x) / x * raw;
        case LimitStatisticKind::discrete_ld_center:
            require(x > 0.0, "Luria-Delbrueck parameter m must be positive");
            return raw / x - std::log(x);
        case LimitStatisticKind::walk_center:
            require(x >= 1.0, "walk length must be at least 1");
            return raw / x - std::log(x);
        case LimitStatisticKind::theorem2_regular: {
            require(x >= 3.0, "h must be at least 3");
            require(params.d >= 2.0, "degree d must be at least 2");
            // d^-h * raw without forming d^h, which overflows for h in the thousands.
            const double scaled =
                raw > 0.0 ? std::exp(std::log(raw) - x * std::log(params.d)) : 0.0;
            return x * (scaled - (1.0 - std::exp(-c)))
                   + c * std::exp(-c) * std::log(x) / std::log(params.d);
        }
    }
    throw DomainError("unknown limit statistic kind");
}

const char* to_string(LimitStatisticKind kind)
{
    switch (kind) {
        case LimitStatisticKind::theorem1_G: return "theorem1_G";
        case LimitStatisticKind::delta_form: return "delta_form";
        case LimitStatisticKind::proposition1_germ: return "proposition1_germ";
        case LimitStatisticKind::mutant_descent: return "mutant_descent";
        case LimitStatisticKind::cluster_rescale: return "cluster_rescale";
        case LimitStatisticKind::discrete_ld_center: return "discrete_ld_center";
        case LimitStatisticKind::walk_center: return "walk_center";
        case LimitStatisticKind::theorem2_regular: return "theorem2_regular";
    }
    return "unknown";
}

}  // namespace pclab
