#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace treelab {

using Node = int;
using Edge = std::pair<Node, Node>;  // always stored as (min, max)

inline Edge make_edge(Node a, Node b) {
    return a < b ? Edge{a, b} : Edge{b, a};
}

/// Undirected acyclic graph on nodes 0..p-1. A spanning tree has exactly
/// p-1 edges; a forest may have fewer. Immutable after construction.
class Forest {
  public:
    Forest(int p, std::vector<Edge> edges);

    int node_count() const { return p_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t edge_count() const { return edges_.size(); }

    bool has_edge(Node a, Node b) const;
    const std::vector<Node>& neighbors(Node v) const;

    bool is_spanning_tree() const { return edges_.size() + 1 == static_cast<std::size_t>(p_); }

    /// Unique simple path from u to v as an ordered edge sequence.
    /// Empty for u == v; nullopt if u and v are in different components.
    std::optional<std::vector<Edge>> path_between(Node u, Node v) const;

    /// True when u and v are in the same component.
    bool connected(Node u, Node v) const;

    void check_node(Node v) const;

    bool operator==(const Forest& o) const { return p_ == o.p_ && edges_ == o.edges_; }

  protected:
    int p_;
    std::vector<Edge> edges_;          // canonical (min,max), sorted
    std::vector<std::vector<Node>> adj_;  // ascending neighbor lists
};

/// Spanning tree: a connected Forest with exactly p-1 edges.
class Tree : public Forest {
  public:
    Tree(int p, std::vector<Edge> edges);

    /// path_between never disconnects on a tree.
    std::vector<Edge> path(Node u, Node v) const;
};

/// All p^(p-2) labeled spanning trees on p nodes, via the Prufer bijection.
/// Each tree appears exactly once. Requires 2 <= p <= 7.
std::vector<Tree> enumerate_spanning_trees(int p);

/// Decode one Prufer sequence (length p-2, entries in 0..p-1) into a tree.
Tree tree_from_prufer(int p, const std::vector<int>& seq);

}  // namespace treelab
