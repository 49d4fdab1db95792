#pragma once

#include "pclab/recursive_tree.hpp"

namespace pclab {

// Library-internal constructors that skip validation of tables the library
// built itself.
struct TreeBuilderAccess
{
    static RecursiveTree tree(std::vector<Vertex> table)
    {
        return RecursiveTree(RecursiveTree::Unchecked{}, std::move(table));
    }

    static MarkedTree marked(RecursiveTree tree, std::vector<std::uint8_t> table, double p)
    {
        return MarkedTree(std::move(tree), std::move(table), p, true);
    }
};

}  // namespace pclab
