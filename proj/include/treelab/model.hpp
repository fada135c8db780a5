#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "treelab/graph.hpp"

namespace treelab {

/// Symmetric p x p matrix of pairwise correlations. Diagonal is 1,
/// entries lie in [-1, 1].
class CorrelationMatrix {
  public:
    explicit CorrelationMatrix(int p);

    int node_count() const { return p_; }
    double operator()(Node i, Node j) const { return data_[i * p_ + j]; }
    void set(Node i, Node j, double value);

    void write_csv(std::ostream& os) const;

  private:
    int p_;
    std::vector<double> data_;
};

/// Zero-field Ising model on a tree or forest. Couplings theta are stored;
/// edge correlations mu = tanh(theta) are always derived, never stored.
/// Immutable after construction.
class TreeIsingModel {
  public:
    TreeIsingModel(Forest structure, std::map<Edge, double> theta);

    const Forest& structure() const { return structure_; }
    int node_count() const { return structure_.node_count(); }

    double theta(Node i, Node j) const;  // 0 for non-edges
    double mu(Node i, Node j) const;     // tanh(theta) for edges, 0 otherwise

    /// Largest |theta_e|; 0 for an edgeless model.
    double max_abs_theta() const;

    /// E[X_u X_v]: product of edge correlations along the connecting path.
    /// 1 for u == v, exactly 0 for disconnected pairs.
    double pairwise_correlation(Node u, Node v) const;

    /// Full matrix of pairwise correlations, one BFS pass per node.
    CorrelationMatrix correlation_matrix() const;

    /// P(X_u = x_u, X_v = x_v) = (1 + x_u x_v E[X_u X_v]) / 4.
    /// Valid only because singleton marginals are uniform (zero field).
    double pair_marginal(Node u, Node v, int x_u, int x_v) const;

    /// log sum_x exp(sum_e theta_e x_i x_j) = p log 2 + sum_e log cosh theta_e.
    double log_partition() const;

  private:
    Forest structure_;
    std::map<Edge, double> theta_;
};

/// Hard-to-distinguish path family: base model with alternating a/b
/// couplings plus one perturbed model per weak edge, (p+1)/2 models total.
/// Requires odd p and 0 < a <= b.
std::vector<TreeIsingModel> hard_family(int p, double a, double b);

/// Chain family used to show eta-separated models: member 0 is the full
/// chain with couplings atanh(eta); member m zeroes chain edge (m-1, m).
std::vector<TreeIsingModel> chain_family(int p, double eta);

/// Model text format: `p <int>` then `edge <i> <j> <theta>` lines;
/// `#` starts a comment.
void write_model(std::ostream& os, const TreeIsingModel& m);
void write_model_file(const std::string& path, const TreeIsingModel& m);
TreeIsingModel read_model(std::istream& is);
TreeIsingModel read_model_file(const std::string& path);

}  // namespace treelab
