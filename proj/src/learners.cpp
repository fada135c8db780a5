#include "treelab/learners.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace treelab {

std::string to_string(LearnMethod m) {
    return m == LearnMethod::chow_liu ? "chow-liu" : "truncate";
}

namespace {

constexpr double kAtanhClampGap = 1e-9;

// Union-find with path compression and union by rank.
class UnionFind {
  public:
    explicit UnionFind(int n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (rank_[a] < rank_[b]) std::swap(a, b);
        parent_[b] = a;
        if (rank_[a] == rank_[b]) ++rank_[a];
        return true;
    }

  private:
    std::vector<int> parent_;
    std::vector<int> rank_;
};

struct WeightedEdge {
    double weight;
    Edge e;
};

// Kruskal over the complete graph; equal weights fall back to the
// lexicographically smaller pair.
std::vector<Edge> max_weight_edges(const CorrelationMatrix& c, double min_weight) {
    const int p = c.node_count();
    std::vector<WeightedEdge> all;
    all.reserve(static_cast<std::size_t>(p) * (p - 1) / 2);
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j) all.push_back({std::fabs(c(i, j)), {i, j}});
    std::stable_sort(all.begin(), all.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
        if (a.weight != b.weight) return a.weight > b.weight;
        return a.e < b.e;
    });
    UnionFind uf(p);
    std::vector<Edge> picked;
    for (const auto& [w, e] : all) {
        if (w < min_weight) break;
        if (uf.unite(e.first, e.second)) {
            picked.push_back(e);
            if (picked.size() + 1 == static_cast<std::size_t>(p)) break;
        }
    }
    return picked;
}

}  // namespace

Tree chow_liu(const CorrelationMatrix& c) {
    if (c.node_count() < 2) throw std::invalid_argument("chow_liu needs p >= 2");
    return Tree(c.node_count(), max_weight_edges(c, -1.0));
}

Forest truncation(const CorrelationMatrix& c, const ThresholdSpec& th) {
    const double cut = th.tau + th.epsilon;
    if (c.node_count() < 2) return Forest(c.node_count(), {});
    // Post-filter on the Chow-Liu tree: equivalent to the max-weight
    // spanning forest under |mu_e| - tau - epsilon.
    Tree t = chow_liu(c);
    std::vector<Edge> kept;
    for (const auto& e : t.edges())
        if (std::fabs(c(e.first, e.second)) >= cut) kept.push_back(e);
    return Forest(c.node_count(), std::move(kept));
}

TreeIsingModel project(const CorrelationMatrix& c, const Forest& t) {
    std::map<Edge, double> theta;
    const double cap = 1.0 - kAtanhClampGap;
    for (const auto& e : t.edges()) {
        double mu = c(e.first, e.second);
        mu = std::clamp(mu, -cap, cap);
        theta[e] = std::atanh(mu);
    }
    return TreeIsingModel(t, std::move(theta));
}

LearnedModel fit(const SampleMatrix& s, LearnMethod method, std::optional<ThresholdSpec> th,
                 std::optional<SeedSpec> seed) {
    if (s.n < 1) throw std::invalid_argument("fit needs n >= 1");
    CorrelationMatrix c = empirical_correlations(s);
    Forest structure = [&]() -> Forest {
        if (s.p < 2) return Forest(s.p, {});
        if (method == LearnMethod::chow_liu) return chow_liu(c);
        if (!th) throw std::invalid_argument("truncation requires thresholds");
        return truncation(c, *th);
    }();
    LearnedModel out{project(c, structure), method, th, s.n, seed};
    return out;
}

}  // namespace treelab
