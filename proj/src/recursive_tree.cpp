#include "pclab/recursive_tree.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>

#include "pclab/error.hpp"
#include "tree_access.hpp"

namespace pclab {
namespace {

void check_probability(double p)
{
    require(p >= 0.0 && p <= 1.0, [p] { return "percolation parameter must lie in [0, 1], got " + std::to_string(p); });
}

void check_size(std::size_t n)
{
    require(n >= 1, "tree size must be at least 1");
    require(n <= 0xffffffffull, "tree size exceeds 32-bit vertex labels");
}

std::vector<Vertex> widen(std::vector<Vertex> parents)
{
    std::vector<Vertex> table(parents.size() + 2, 0);
    std::copy(parents.begin(), parents.end(), table.begin() + 2);
    return table;
}

template<class T>
void put_le(std::ostream& out, T value)
{
    static_assert(std::endian::native == std::endian::little);
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template<class T>
T get_le(std::istream& in)
{
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    require(static_cast<bool>(in), "truncated marked-tree dump");
    return value;
}

constexpr std::array<char, 5> kMagic{'P', 'C', 'L', 'B', '1'};

}  // namespace

RecursiveTree::RecursiveTree(std::vector<Vertex> parents_of_2_to_n)
    : parent_(widen(std::move(parents_of_2_to_n)))
{
    for (std::size_t i = 2; i < parent_.size(); ++i) {
        require(parent_[i] >= 1 && parent_[i] < i, [i] {
            return "parent of vertex " + std::to_string(i) + " must lie in [1, " + std::to_string(i - 1) + "]";
        });
    }
}

Vertex RecursiveTree::parent(Vertex v) const
{
    require(v >= 2 && v <= size(), [v] { return "vertex " + std::to_string(v) + " has no parent edge"; });
    return parent_[v];
}

MarkedTree::MarkedTree(RecursiveTree tree, std::vector<std::uint8_t> removed_2_to_n,
                       double survival_prob)
    : tree_(std::move(tree)), survival_(survival_prob)
{
    check_probability(survival_prob);
    require(removed_2_to_n.size() == tree_.edge_count(),
            "removal flags must have one entry per edge");
    removed_.assign(tree_.size() + 1, 0);
    for (std::size_t i = 0; i < removed_2_to_n.size(); ++i) {
        removed_[i + 2] = removed_2_to_n[i] ? 1 : 0;
    }
}

bool MarkedTree::removed(Vertex edge) const
{
    require(edge >= 2 && edge <= size(), [edge] { return "edge " + std::to_string(edge) + " out of range"; });
    return removed_[edge] != 0;
}

std::size_t MarkedTree::removed_count() const noexcept
{
    std::size_t count = 0;
    for (auto flag : removed_) {
        count += flag;
    }
    return count;
}

RecursiveTree build_rrt(std::size_t n, Stream& rng)
{
    check_size(n);
    std::vector<Vertex> table(n + 1, 0);
    for (std::size_t i = 2; i <= n; ++i) {
        table[i] = static_cast<Vertex>(1 + rng.below(i - 1));
    }
    return TreeBuilderAccess::tree(std::move(table));
}

MarkedTree build_marked(std::size_t n, double p, Stream& rng, MarkOrder order)
{
    check_size(n);
    check_probability(p);
    std::vector<Vertex> parents(n + 1, 0);
    std::vector<std::uint8_t> removed(n + 1, 0);
    const double removal = 1.0 - p;
    if (order == MarkOrder::during_growth) {
        for (std::size_t i = 2; i <= n; ++i) {
            parents[i] = static_cast<Vertex>(1 + rng.below(i - 1));
            removed[i] = rng.uniform() < removal;
        }
    }
    else {
        for (std::size_t i = 2; i <= n; ++i) {
            parents[i] = static_cast<Vertex>(1 + rng.below(i - 1));
        }
        for (std::size_t i = 2; i <= n; ++i) {
            removed[i] = rng.uniform() < removal;
        }
    }
    return TreeBuilderAccess::marked(TreeBuilderAccess::tree(std::move(parents)),
                                     std::move(removed), p);
}

std::size_t depth(const RecursiveTree& tree, Vertex v)
{
    require(v >= 1 && v <= tree.size(), [v] { return "vertex " + std::to_string(v) + " out of range"; });
    auto parents = tree.parent_table();
    std::size_t d = 0;
    while (v != 1) {
        v = parents[v];
        ++d;
    }
    return d;
}

std::vector<std::uint32_t> all_depths(const RecursiveTree& tree)
{
    auto parents = tree.parent_table();
    std::vector<std::uint32_t> result(parents.size(), 0);
    for (std::size_t i = 2; i < parents.size(); ++i) {
        result[i] = result[parents[i]] + 1;
    }
    return result;
}

double exact_mean_root_fraction(std::size_t n, double p)
{
    require(n >= 1, "tree size must be at least 1");
    check_probability(p);
    // Accumulate in log space: the product underflows slowly but n can be 1e8.
    double log_value = 0.0;
    for (std::size_t k = 2; k <= n; ++k) {
        const double kd = static_cast<double>(k);
        log_value += std::log1p((p - 1.0) / kd);
    }
    return std::exp(log_value);
}

void urn_step(UrnState& urn, double p, Stream& rng)
{
    if (rng.uniform() >= p) {
        ++urn.black;
        return;
    }
    if (rng.below(urn.size()) < urn.red) {
        ++urn.red;
    }
    else {
        ++urn.black;
    }
}

std::uint64_t urn_black_count(std::size_t n, double p, Stream& rng)
{
    require(n >= 1, "urn size must be at least 1");
    check_probability(p);
    UrnState urn;
    while (urn.size() < n) {
        urn_step(urn, p, rng);
    }
    return urn.black;
}

void write_marked_tree(std::ostream& out, const MarkedTree& marked)
{
    const std::size_t n = marked.size();
    out.write(kMagic.data(), kMagic.size());
    put_le<std::uint64_t>(out, n);
    put_le<double>(out, marked.survival_prob());
    auto parents = marked.tree().parent_table();
    for (std::size_t i = 2; i <= n; ++i) {
        put_le<std::uint64_t>(out, parents[i]);
    }
    auto removed = marked.removed_table();
    std::vector<char> packed((n - 1 + 7) / 8, 0);
    for (std::size_t i = 2; i <= n; ++i) {
        if (removed[i]) {
            packed[(i - 2) / 8] |= static_cast<char>(1u << ((i - 2) % 8));
        }
    }
    out.write(packed.data(), static_cast<std::streamsize>(packed.size()));
    require(static_cast<bool>(out), "failed to write marked-tree dump");
}

MarkedTree read_marked_tree(std::istream& in)
{
    std::array<char, 5> magic{};
    in.read(magic.data(), magic.size());
    require(static_cast<bool>(in) && magic == kMagic, "not a PCLB1 marked-tree dump");
    const auto n = get_le<std::uint64_t>(in);
    const auto p = get_le<double>(in);
    check_size(n);
    std::vector<Vertex> parents;
    parents.reserve(n - 1);
    for (std::size_t i = 2; i <= n; ++i) {
        const auto value = get_le<std::uint64_t>(in);
        require(value <= 0xffffffffull, "parent label out of range in dump");
        parents.push_back(static_cast<Vertex>(value));
    }
    std::vector<char> packed((n - 1 + 7) / 8, 0);
    in.read(packed.data(), static_cast<std::streamsize>(packed.size()));
    require(static_cast<bool>(in), "truncated marked-tree dump");
    std::vector<std::uint8_t> removed(n - 1, 0);
    for (std::size_t e = 0; e + 1 < n; ++e) {
        removed[e] = (static_cast<unsigned char>(packed[e / 8]) >> (e % 8)) & 1u;
    }
    return MarkedTree(RecursiveTree(std::move(parents)), std::move(removed), p);
}

}  // namespace pclab
