#include "treelab/model.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace treelab {

CorrelationMatrix::CorrelationMatrix(int p) : p_(p), data_(static_cast<std::size_t>(p) * p, 0.0) {
    if (p < 1) throw std::invalid_argument("correlation matrix needs p >= 1");
    for (int i = 0; i < p; ++i) data_[static_cast<std::size_t>(i) * p + i] = 1.0;
}

void CorrelationMatrix::set(Node i, Node j, double value) {
    if (i < 0 || j < 0 || i >= p_ || j >= p_) throw std::invalid_argument("index out of range");
    if (i == j) {
        if (value != 1.0) throw std::invalid_argument("diagonal entries must be 1");
        return;
    }
    if (!(value >= -1.0 && value <= 1.0))
        throw std::invalid_argument("correlation outside [-1, 1]");
    data_[static_cast<std::size_t>(i) * p_ + j] = value;
    data_[static_cast<std::size_t>(j) * p_ + i] = value;
}

void CorrelationMatrix::write_csv(std::ostream& os) const {
    os << std::setprecision(17);
    for (int i = 0; i < p_; ++i) {
        for (int j = 0; j < p_; ++j) os << (j ? "," : "") << (*this)(i, j);
        os << "\n";
    }
}

TreeIsingModel::TreeIsingModel(Forest structure, std::map<Edge, double> theta)
    : structure_(std::move(structure)), theta_(std::move(theta)) {
    for (const auto& [e, th] : theta_) {
        if (!structure_.has_edge(e.first, e.second))
            throw std::invalid_argument("coupling on a non-edge");
        if (!std::isfinite(th)) throw std::invalid_argument("coupling must be finite");
    }
    for (const auto& e : structure_.edges())
        if (!theta_.count(e)) throw std::invalid_argument("edge without a coupling");
}

double TreeIsingModel::theta(Node i, Node j) const {
    auto it = theta_.find(make_edge(i, j));
    return it == theta_.end() ? 0.0 : it->second;
}

double TreeIsingModel::mu(Node i, Node j) const { return std::tanh(theta(i, j)); }

double TreeIsingModel::max_abs_theta() const {
    double m = 0.0;
    for (const auto& [e, th] : theta_) m = std::max(m, std::fabs(th));
    return m;
}

double TreeIsingModel::pairwise_correlation(Node u, Node v) const {
    structure_.check_node(u);
    structure_.check_node(v);
    if (u == v) return 1.0;
    auto path = structure_.path_between(u, v);
    if (!path) return 0.0;
    double prod = 1.0;
    for (const auto& e : *path) prod *= mu(e.first, e.second);
    return prod;
}

CorrelationMatrix TreeIsingModel::correlation_matrix() const {
    const int p = node_count();
    CorrelationMatrix c(p);
    std::vector<double> corr(p);
    std::vector<char> seen(p);
    for (Node s = 0; s < p; ++s) {
        std::fill(seen.begin(), seen.end(), 0);
        corr[s] = 1.0;
        seen[s] = 1;
        std::queue<Node> q;
        q.push(s);
        while (!q.empty()) {
            Node v = q.front();
            q.pop();
            for (Node w : structure_.neighbors(v))
                if (!seen[w]) {
                    seen[w] = 1;
                    corr[w] = corr[v] * mu(v, w);
                    q.push(w);
                }
        }
        for (Node v = 0; v < p; ++v)
            if (v != s) c.set(s, v, seen[v] ? corr[v] : 0.0);
    }
    return c;
}

double TreeIsingModel::pair_marginal(Node u, Node v, int x_u, int x_v) const {
    if ((x_u != 1 && x_u != -1) || (x_v != 1 && x_v != -1))
        throw std::invalid_argument("spins must be -1 or +1");
    return (1.0 + x_u * x_v * pairwise_correlation(u, v)) / 4.0;
}

double TreeIsingModel::log_partition() const {
    double s = node_count() * std::log(2.0);
    for (const auto& [e, th] : theta_) s += std::log(std::cosh(th));
    return s;
}

std::vector<TreeIsingModel> hard_family(int p, double a, double b) {
    if (p < 3 || p % 2 == 0) throw std::invalid_argument("hard_family needs odd p >= 3");
    if (!(a > 0.0 && a <= b)) throw std::invalid_argument("hard_family needs 0 < a <= b");
    // Base: path 0-1-...-(p-1), coupling a on edge (i,i+1) for even i, b for odd i.
    std::vector<Edge> base_edges;
    std::map<Edge, double> base_theta;
    for (int i = 0; i + 1 < p; ++i) {
        Edge e{i, i + 1};
        base_edges.push_back(e);
        base_theta[e] = (i % 2 == 0) ? a : b;
    }
    std::vector<TreeIsingModel> family;
    family.emplace_back(Tree(p, base_edges), base_theta);
    // Perturbations: for each weak edge (i,i+1), i even, replace it by (i,i+2)
    // with coupling a.
    for (int i = 0; i + 2 <= p - 1; i += 2) {
        std::vector<Edge> edges = base_edges;
        std::map<Edge, double> theta = base_theta;
        Edge removed{i, i + 1};
        edges.erase(std::find(edges.begin(), edges.end(), removed));
        theta.erase(removed);
        Edge added{i, i + 2};
        edges.push_back(added);
        theta[added] = a;
        family.emplace_back(Tree(p, std::move(edges)), std::move(theta));
    }
    return family;
}

std::vector<TreeIsingModel> chain_family(int p, double eta) {
    if (p < 2) throw std::invalid_argument("chain_family needs p >= 2");
    if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("eta must lie in (0, 1)");
    const double th = std::atanh(eta);
    std::vector<Edge> edges;
    for (int i = 0; i + 1 < p; ++i) edges.push_back({i, i + 1});
    std::vector<TreeIsingModel> family;
    for (int m = 0; m < p; ++m) {
        std::map<Edge, double> theta;
        for (int i = 0; i + 1 < p; ++i)
            theta[{i, i + 1}] = (m > 0 && i == m - 1) ? 0.0 : th;
        family.emplace_back(Tree(p, edges), std::move(theta));
    }
    return family;
}

void write_model(std::ostream& os, const TreeIsingModel& m) {
    os << "p " << m.node_count() << "\n" << std::setprecision(17);
    for (const auto& e : m.structure().edges())
        os << "edge " << e.first << " " << e.second << " " << m.theta(e.first, e.second) << "\n";
}

void write_model_file(const std::string& path, const TreeIsingModel& m) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_model(os, m);
}

TreeIsingModel read_model(std::istream& is) {
    std::string line;
    int p = -1;
    std::vector<Edge> edges;
    std::map<Edge, double> theta;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "p") {
            if (!(ls >> p)) throw std::runtime_error("bad model file: malformed p line");
        } else if (tag == "edge") {
            int i, j;
            double th;
            if (!(ls >> i >> j >> th)) throw std::runtime_error("bad model file: malformed edge line");
            Edge e = make_edge(i, j);
            edges.push_back(e);
            theta[e] = th;
        } else {
            throw std::runtime_error("bad model file: unknown line tag '" + tag + "'");
        }
    }
    if (p < 1) throw std::runtime_error("bad model file: missing p line");
    return TreeIsingModel(Forest(p, std::move(edges)), std::move(theta));
}

TreeIsingModel read_model_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open model file: " + path);
    return read_model(is);
}

}  // namespace treelab
