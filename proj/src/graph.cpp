#include "treelab/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>

namespace treelab {

namespace {
constexpr int kMaxStructuralP = 1 << 20;
}

Forest::Forest(int p, std::vector<Edge> edges) : p_(p), edges_(std::move(edges)) {
    if (p < 1 || p > kMaxStructuralP)
        throw std::invalid_argument("node count out of range: " + std::to_string(p));
    for (auto& e : edges_) e = make_edge(e.first, e.second);
    std::sort(edges_.begin(), edges_.end());
    adj_.resize(p_);
    std::set<Edge> seen;
    for (const auto& [a, b] : edges_) {
        if (a < 0 || b >= p_) throw std::invalid_argument("edge endpoint out of range");
        if (a == b) throw std::invalid_argument("self-loop");
        if (!seen.insert({a, b}).second) throw std::invalid_argument("duplicate edge");
        adj_[a].push_back(b);
        adj_[b].push_back(a);
    }
    if (edges_.size() >= static_cast<std::size_t>(p_))
        throw std::invalid_argument("too many edges for an acyclic graph");
    // Acyclicity: |E| <= p-1 does not suffice, check components by BFS.
    std::vector<int> comp(p_, -1);
    int ncomp = 0;
    for (Node s = 0; s < p_; ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = ncomp;
        std::queue<Node> q;
        q.push(s);
        while (!q.empty()) {
            Node v = q.front();
            q.pop();
            for (Node w : adj_[v])
                if (comp[w] < 0) {
                    comp[w] = ncomp;
                    q.push(w);
                }
        }
        ++ncomp;
    }
    if (edges_.size() != static_cast<std::size_t>(p_ - ncomp))
        throw std::invalid_argument("graph contains a cycle");
}

void Forest::check_node(Node v) const {
    if (v < 0 || v >= p_) throw std::invalid_argument("invalid node id: " + std::to_string(v));
}

bool Forest::has_edge(Node a, Node b) const {
    Edge e = make_edge(a, b);
    return std::binary_search(edges_.begin(), edges_.end(), e);
}

const std::vector<Node>& Forest::neighbors(Node v) const {
    check_node(v);
    return adj_[v];
}

std::optional<std::vector<Edge>> Forest::path_between(Node u, Node v) const {
    check_node(u);
    check_node(v);
    if (u == v) return std::vector<Edge>{};
    std::vector<Node> parent(p_, -2);
    parent[u] = -1;
    std::queue<Node> q;
    q.push(u);
    while (!q.empty()) {
        Node x = q.front();
        q.pop();
        if (x == v) break;
        for (Node y : adj_[x])
            if (parent[y] == -2) {
                parent[y] = x;
                q.push(y);
            }
    }
    if (parent[v] == -2) return std::nullopt;
    std::vector<Edge> rev;
    for (Node x = v; parent[x] != -1; x = parent[x]) rev.push_back(make_edge(parent[x], x));
    return std::vector<Edge>(rev.rbegin(), rev.rend());
}

bool Forest::connected(Node u, Node v) const { return path_between(u, v).has_value(); }

Tree::Tree(int p, std::vector<Edge> edges) : Forest(p, std::move(edges)) {
    if (!is_spanning_tree()) throw std::invalid_argument("not a spanning tree: wrong edge count");
}

std::vector<Edge> Tree::path(Node u, Node v) const {
    return *path_between(u, v);  // always connected
}

Tree tree_from_prufer(int p, const std::vector<int>& seq) {
    if (p < 2) throw std::invalid_argument("prufer decode needs p >= 2");
    if (seq.size() != static_cast<std::size_t>(p - 2))
        throw std::invalid_argument("prufer sequence length must be p-2");
    std::vector<int> degree(p, 1);
    for (int s : seq) {
        if (s < 0 || s >= p) throw std::invalid_argument("prufer entry out of range");
        ++degree[s];
    }
    std::vector<Edge> edges;
    edges.reserve(p - 1);
    std::priority_queue<int, std::vector<int>, std::greater<int>> leaves;
    for (int v = 0; v < p; ++v)
        if (degree[v] == 1) leaves.push(v);
    for (int s : seq) {
        int leaf = leaves.top();
        leaves.pop();
        edges.push_back(make_edge(leaf, s));
        if (--degree[s] == 1) leaves.push(s);
    }
    int a = leaves.top();
    leaves.pop();
    int b = leaves.top();
    edges.push_back(make_edge(a, b));
    return Tree(p, std::move(edges));
}

std::vector<Tree> enumerate_spanning_trees(int p) {
    if (p < 2 || p > 7) throw std::invalid_argument("enumerate_spanning_trees supports 2 <= p <= 7");
    std::vector<Tree> out;
    if (p == 2) {
        out.emplace_back(2, std::vector<Edge>{{0, 1}});
        return out;
    }
    std::vector<int> seq(p - 2, 0);
    while (true) {
        out.push_back(tree_from_prufer(p, seq));
        int i = static_cast<int>(seq.size()) - 1;
        while (i >= 0 && seq[i] == p - 1) seq[i--] = 0;
        if (i < 0) break;
        ++seq[i];
    }
    return out;
}

}  // namespace treelab
