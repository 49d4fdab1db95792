#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "pclab/rng.hpp"

namespace pclab {

//! 1-based vertex label; vertex 1 is the root.
using Vertex = std::uint32_t;

/*!
 * Increasing tree on {1..n} stored as a flat parent sequence.
 *
 * Edge i joins vertex i to parent(i), for i in 2..n. parent(i) < i always,
 * so any labeling that depends on ancestors can be computed in one forward
 * pass.
 */
class RecursiveTree
{
  public:
    //! Takes parents for vertices 2..n, in order; validates parent[i] < i.
    explicit RecursiveTree(std::vector<Vertex> parents_of_2_to_n);

    std::size_t size() const noexcept { return parent_.size() - 1; }
    std::size_t edge_count() const noexcept { return size() - 1; }

    Vertex parent(Vertex v) const;

    //! Indexed by vertex; entries 0 and 1 are 0.
    std::span<const Vertex> parent_table() const noexcept { return parent_; }

  private:
    struct Unchecked
    {
    };
    RecursiveTree(Unchecked, std::vector<Vertex> table) : parent_(std::move(table)) {}

    friend struct TreeBuilderAccess;

    std::vector<Vertex> parent_;
};

//! Tree plus an immutable per-edge removal flag.
class MarkedTree
{
  public:
    //! removed[i] for edges i = 2..n (length n-1).
    MarkedTree(RecursiveTree tree, std::vector<std::uint8_t> removed_2_to_n,
               double survival_prob);

    const RecursiveTree& tree() const noexcept { return tree_; }
    std::size_t size() const noexcept { return tree_.size(); }
    double survival_prob() const noexcept { return survival_; }

    bool removed(Vertex edge) const;
    //! Indexed by edge (child vertex); entries 0 and 1 are 0.
    std::span<const std::uint8_t> removed_table() const noexcept { return removed_; }
    std::size_t removed_count() const noexcept;

  private:
    MarkedTree(RecursiveTree tree, std::vector<std::uint8_t> table, double p, bool)
        : tree_(std::move(tree)), removed_(std::move(table)), survival_(p)
    {
    }

    friend struct TreeBuilderAccess;

    RecursiveTree tree_;
    std::vector<std::uint8_t> removed_;
    double survival_;
};

enum class MarkOrder { during_growth, after_growth };

RecursiveTree build_rrt(std::size_t n, Stream& rng);

MarkedTree build_marked(std::size_t n, double p, Stream& rng,
                        MarkOrder order = MarkOrder::during_growth);

std::size_t depth(const RecursiveTree& tree, Vertex v);

//! Depth of every vertex in one forward pass; index 0 unused.
std::vector<std::uint32_t> all_depths(const RecursiveTree& tree);

/*!
 * Exact E(G_n / n) for percolation with survival p on a uniform recursive
 * tree: the probability that a uniform vertex keeps its whole branch, which
 * telescopes to prod_{k=2}^{n} (k - 1 + p) / k.
 */
double exact_mean_root_fraction(std::size_t n, double p);

struct UrnState
{
    std::uint64_t red = 1;
    std::uint64_t black = 0;

    std::uint64_t size() const noexcept { return red + black; }
};

//! One urn step: black with probability 1-p, else copy a uniform ball.
void urn_step(UrnState& urn, double p, Stream& rng);

//! Black-ball count once the urn holds n balls (same law as Delta_n).
std::uint64_t urn_black_count(std::size_t n, double p, Stream& rng);

// Binary dump: "PCLB1", n (u64 LE), p (f64 LE), parents of 2..n (u64 LE),
// then removal flags packed LSB-first starting at edge 2.
void write_marked_tree(std::ostream& out, const MarkedTree& marked);
MarkedTree read_marked_tree(std::istream& in);

}  // namespace pclab
