#include "treelab/verification.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "treelab/evaluation.hpp"
#include "treelab/learners.hpp"

namespace treelab {

namespace {

bool contains_edge(const std::vector<Edge>& path, const Edge& e) {
    return std::find(path.begin(), path.end(), e) != path.end();
}

// True when x lies on w's side of edge f in tree t.
bool on_w_side(const Tree& t, const Edge& f, Node w, Node x) {
    return !contains_edge(t.path(w, x), f);
}

}  // namespace

std::optional<TwoTreesWitness> two_trees_witness(const Tree& t1, const Tree& t2, Node w,
                                                 Node wtilde) {
    if (t1.node_count() != t2.node_count())
        throw std::invalid_argument("trees must share a node set");
    t1.check_node(w);
    t1.check_node(wtilde);
    if (w == wtilde) return std::nullopt;

    const std::vector<Edge> path1 = t1.path(w, wtilde);
    const std::vector<Edge> path2 = t2.path(w, wtilde);
    {
        std::vector<Edge> s1 = path1, s2 = path2;
        std::sort(s1.begin(), s1.end());
        std::sort(s2.begin(), s2.end());
        if (s1 == s2) return std::nullopt;  // paths equal
    }

    for (const Edge& f : path1) {
        if (contains_edge(path2, f)) continue;
        // Orient f so u is on w's side in t1.
        Node u = f.first, ut = f.second;
        if (!on_w_side(t1, f, w, u)) std::swap(u, ut);
        for (const Edge& g : path2) {
            if (contains_edge(path1, g)) continue;
            if (!contains_edge(t1.path(g.first, g.second), f)) continue;  // f in path_T(v, vt)
            if (!contains_edge(t2.path(u, ut), g)) continue;              // g in path_That(u, ut)
            // Orient g so v is on w's side of f in t1; f on path_T(v, vt)
            // puts the endpoints on opposite sides.
            Node v = g.first, vt = g.second;
            if (!on_w_side(t1, f, w, v)) std::swap(v, vt);
            return TwoTreesWitness{{u, ut}, {v, vt}};
        }
    }
    throw std::runtime_error("two_trees_witness: no edge pair satisfies the swap properties "
                             "(a witness should always exist for differing paths)");
}

PathStatistics zy_statistics(const SampleMatrix& s, const TreeIsingModel& m_true, Edge e, Node u,
                             Node utilde) {
    const auto path = m_true.structure().path_between(u, utilde);
    e = make_edge(e.first, e.second);
    if (!path || !contains_edge(*path, e))
        throw std::invalid_argument("edge does not lie on the path between the node pair");
    PathStatistics st;
    st.e = e;
    st.u = u;
    st.utilde = utilde;
    st.mu_e = m_true.mu(e.first, e.second);
    st.mu_rest = 1.0;
    for (const Edge& pe : *path)
        if (pe != e) st.mu_rest *= m_true.mu(pe.first, pe.second);
    st.mean_z = st.mu_e * (1.0 - st.mu_rest);
    st.mean_y = st.mu_e * (1.0 + st.mu_rest);
    for (int l = 0; l < s.n; ++l) {
        const std::int8_t* row = &s.spins[static_cast<std::size_t>(l) * s.p];
        const int edge_prod = row[e.first] * row[e.second];
        const int pair_prod = row[u] * row[utilde];
        st.z_sum += edge_prod - pair_prod;
        st.y_sum += edge_prod + pair_prod;
    }
    return st;
}

EventReport check_events(const TreeIsingModel& m_true, const SampleMatrix& s, double epsilon,
                         double gamma) {
    if (s.p != m_true.node_count()) throw std::invalid_argument("sample/model dimension mismatch");
    EventReport r;
    r.epsilon = epsilon;
    r.gamma = gamma;
    r.tau = strong_edge_threshold(epsilon, m_true.max_abs_theta());

    const CorrelationMatrix pop = m_true.correlation_matrix();
    const CorrelationMatrix emp = empirical_correlations(s);
    for (int i = 0; i < s.p; ++i)
        for (int j = i + 1; j < s.p; ++j)
            r.max_corr_deviation = std::max(r.max_corr_deviation, std::fabs(pop(i, j) - emp(i, j)));
    r.corr_ok = r.max_corr_deviation <= epsilon;

    const Tree learned = chow_liu(emp);
    for (const auto& e : m_true.structure().edges())
        if (std::fabs(m_true.mu(e.first, e.second)) >= r.tau && !learned.has_edge(e.first, e.second))
            r.missed_strong_edges.push_back(e);
    r.strong_ok = r.missed_strong_edges.empty();

    const TreeIsingModel projected = project(emp, m_true.structure());
    r.cascade_deviation = sstv2(m_true, projected).value;
    r.cascade_ok = r.cascade_deviation <= gamma;
    return r;
}

ProductConcentrationResult product_concentration_check(const std::vector<double>& mus, int n,
                                                       double gamma, int trials,
                                                       std::uint64_t master_seed) {
    if (mus.empty()) throw std::invalid_argument("need at least one factor");
    for (double mu : mus)
        if (!(mu >= -1.0 && mu <= 1.0)) throw std::invalid_argument("factor mean outside [-1, 1]");
    if (n < 1 || trials < 1) throw std::invalid_argument("n and trials must be >= 1");
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be positive");

    double target = 1.0;
    for (double mu : mus) target *= mu;

    int exceed = 0;
    for (int t = 0; t < trials; ++t) {
        auto rng = SeedSpec{master_seed, static_cast<std::uint64_t>(t)}.make_rng();
        double prod = 1.0;
        for (double mu : mus) {
            const double p_plus = (1.0 + mu) / 2.0;
            long long sum = 0;
            for (int i = 0; i < n; ++i) {
                const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
                sum += (u < p_plus) ? 1 : -1;
            }
            prod *= static_cast<double>(sum) / n;
        }
        if (std::fabs(prod - target) >= gamma) ++exceed;
    }
    ProductConcentrationResult res;
    res.trials = trials;
    res.exceedance_rate = static_cast<double>(exceed) / trials;
    res.bound = 8.0 / gamma * std::exp(-gamma * gamma * n / 32.0);
    return res;
}

}  // namespace treelab
