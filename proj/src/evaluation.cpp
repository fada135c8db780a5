#include "treelab/evaluation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace treelab {

double binary_entropy(double q) {
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("binary_entropy argument outside [0, 1]");
    double h = 0.0;
    if (q > 0.0) h -= q * std::log(q);
    if (q < 1.0) h -= (1.0 - q) * std::log(1.0 - q);
    return h;
}

MarginalTable exact_marginal(const TreeIsingModel& m, std::vector<Node> subset) {
    const int p = m.node_count();
    std::sort(subset.begin(), subset.end());
    subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
    if (subset.empty()) throw std::invalid_argument("subset must be non-empty");
    if (subset.size() > 20) throw std::invalid_argument("subset too large (budget is 20)");
    for (Node v : subset) m.structure().check_node(v);

    const Forest& f = m.structure();
    std::vector<int> pos_in_subset(p, -1);
    for (std::size_t k = 0; k < subset.size(); ++k) pos_in_subset[subset[k]] = static_cast<int>(k);

    // One BFS ordering per component; children processed before parents.
    struct NodeInfo {
        Node node;
        Node parent;
    };
    std::vector<NodeInfo> order;  // roots first, BFS
    order.reserve(p);
    std::vector<char> seen(p, 0);
    std::vector<int> root_index;  // indices into `order` of component roots
    for (Node s = 0; s < p; ++s) {
        if (seen[s]) continue;
        seen[s] = 1;
        root_index.push_back(static_cast<int>(order.size()));
        order.push_back({s, -1});
        for (std::size_t qi = order.size() - 1; qi < order.size(); ++qi) {
            Node v = order[qi].node;
            for (Node w : f.neighbors(v))
                if (!seen[w]) {
                    seen[w] = 1;
                    order.push_back({w, v});
                }
        }
    }

    MarginalTable out;
    out.subset = subset;
    out.prob.assign(std::size_t{1} << subset.size(), 0.0);

    // up[v][(s+1)/2] = sum over the subtree below v, given spin s at v, of
    // the product of edge factors (1 + mu x x) in the subtree (clamped
    // nodes contribute only their assigned spin).
    std::vector<std::array<double, 2>> up(p);
    const double norm = std::pow(2.0, -p);
    for (std::size_t mask = 0; mask < out.prob.size(); ++mask) {
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            const Node v = it->node;
            const int sp = pos_in_subset[v];
            for (int si = 0; si < 2; ++si) {
                if (sp >= 0) {
                    const int clamped = (mask >> sp) & 1;  // 1 => +1
                    if (si != clamped) {
                        up[v][si] = 0.0;
                        continue;
                    }
                }
                const int s = si ? 1 : -1;
                double prod = 1.0;
                for (Node w : f.neighbors(v)) {
                    if (w == it->parent) continue;
                    const double mu = m.mu(v, w);
                    prod *= (1.0 - mu * s) * up[w][0] + (1.0 + mu * s) * up[w][1];
                }
                up[v][si] = prod;
            }
        }
        double total = 1.0;
        for (int ri : root_index) {
            Node r = order[ri].node;
            total *= up[r][0] + up[r][1];
        }
        out.prob[mask] = norm * total;
    }
    return out;
}

namespace {

// Half the L1 distance between two tables on the same subset.
double tv_distance(const MarginalTable& a, const MarginalTable& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.prob.size(); ++i) s += std::fabs(a.prob[i] - b.prob[i]);
    return s / 2.0;
}

void check_same_p(const TreeIsingModel& a, const TreeIsingModel& b) {
    if (a.node_count() != b.node_count())
        throw std::invalid_argument("models have mismatched node counts");
}

}  // namespace

LossReport sstv2(const TreeIsingModel& a, const TreeIsingModel& b) {
    check_same_p(a, b);
    const int p = a.node_count();
    CorrelationMatrix ca = a.correlation_matrix();
    CorrelationMatrix cb = b.correlation_matrix();
    LossReport r;
    r.k = 2;
    r.argmax_subset = {0, std::min(1, p - 1)};
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j) {
            double v = std::fabs(ca(i, j) - cb(i, j)) / 2.0;
            if (v > r.value) {
                r.value = v;
                r.argmax_subset = {i, j};
            }
        }
    return r;
}

LossReport sstv_k(const TreeIsingModel& a, const TreeIsingModel& b, int k) {
    check_same_p(a, b);
    const int p = a.node_count();
    if (k < 1 || k > p) throw std::invalid_argument("k must lie in [1, p]");
    if (k > 6 || p > 16) throw std::invalid_argument("sstv_k budget exceeded (k <= 6, p <= 16)");
    LossReport r;
    r.k = k;
    std::vector<Node> subset(k);
    for (int i = 0; i < k; ++i) subset[i] = i;
    r.argmax_subset = subset;
    while (true) {
        double v = tv_distance(exact_marginal(a, subset), exact_marginal(b, subset));
        if (v > r.value) {
            r.value = v;
            r.argmax_subset = subset;
        }
        // next k-combination of 0..p-1
        int i = k - 1;
        while (i >= 0 && subset[i] == p - k + i) --i;
        if (i < 0) break;
        ++subset[i];
        for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
    }
    return r;
}

double conditional_prediction_error(const TreeIsingModel& p_true, const TreeIsingModel& q, Node i,
                                    const std::vector<Node>& subset) {
    check_same_p(p_true, q);
    if (std::find(subset.begin(), subset.end(), i) != subset.end())
        throw std::invalid_argument("query node must not be in the conditioning set");
    std::vector<Node> full = subset;
    full.push_back(i);
    MarginalTable tp = exact_marginal(p_true, full);
    MarginalTable tq = exact_marginal(q, full);
    const int bit_i = static_cast<int>(
        std::find(tp.subset.begin(), tp.subset.end(), i) - tp.subset.begin());
    const std::size_t nctx = tp.prob.size() / 2;
    double err = 0.0;
    for (std::size_t ctx = 0; ctx < nctx; ++ctx) {
        // Interleave the context bits around position bit_i.
        const std::size_t low = ctx & ((std::size_t{1} << bit_i) - 1);
        const std::size_t high = (ctx >> bit_i) << (bit_i + 1);
        const std::size_t idx_minus = high | low;
        const std::size_t idx_plus = idx_minus | (std::size_t{1} << bit_i);
        const double ps = tp.prob[idx_minus] + tp.prob[idx_plus];
        if (ps <= 0.0) continue;
        const double qs = tq.prob[idx_minus] + tq.prob[idx_plus];
        const double p_cond = tp.prob[idx_plus] / ps;
        const double q_cond = qs > 0.0 ? tq.prob[idx_plus] / qs : 0.5;
        err += ps * std::fabs(p_cond - q_cond);
    }
    return err;
}

double kl_to_projection(const TreeIsingModel& p_true, const Forest& t) {
    if (t.node_count() != p_true.node_count())
        throw std::invalid_argument("structure has mismatched node count");
    const double log2 = std::log(2.0);
    // H(P) = p log 2 - sum_{e in E_P} (log 2 - H_B((1+mu_e)/2)); the
    // projection matches correlations across t's edges, so
    // D(P || Pi_t(P)) = -H(P) + p log 2 - sum_{e in t} (log 2 - H_B((1+mu_e)/2)).
    double d = 0.0;
    for (const auto& e : p_true.structure().edges())
        d += log2 - binary_entropy((1.0 + p_true.mu(e.first, e.second)) / 2.0);
    for (const auto& e : t.edges())
        d -= log2 - binary_entropy((1.0 + p_true.pairwise_correlation(e.first, e.second)) / 2.0);
    return d;
}

double symmetrized_kl(const TreeIsingModel& a, const TreeIsingModel& b) {
    check_same_p(a, b);
    const int p = a.node_count();
    CorrelationMatrix ca = a.correlation_matrix();
    CorrelationMatrix cb = b.correlation_matrix();
    double j = 0.0;
    for (int u = 0; u < p; ++u)
        for (int v = u + 1; v < p; ++v)
            j += (a.theta(u, v) - b.theta(u, v)) * (ca(u, v) - cb(u, v));
    return j;
}

}  // namespace treelab
