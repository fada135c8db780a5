#pragma once

#include <vector>

#include "treelab/model.hpp"

namespace treelab {

/// Exact marginal over a node subset S: probabilities indexed by a bitmask
/// over S in ascending node order (bit k set means the k-th smallest node
/// of S takes spin +1).
struct MarginalTable {
    std::vector<Node> subset;       // ascending, no duplicates
    std::vector<double> prob;       // size 2^|subset|
};

struct LossReport {
    int k = 0;
    double value = 0.0;
    std::vector<Node> argmax_subset;
};

/// Exact marginal by tree message passing (one 2-entry message per node),
/// valid for trees and forests. |S| <= 20.
MarginalTable exact_marginal(const TreeIsingModel& m, std::vector<Node> subset);

/// L^(2): max over node pairs of half the absolute difference of
/// path-correlation products. Tie-break: lexicographically smallest pair.
LossReport sstv2(const TreeIsingModel& a, const TreeIsingModel& b);

/// L^(k): exact supremum of TV over all size-k marginals, by subset
/// enumeration. Budget: C(p,k)*2^k, enforced as k <= 6 and p <= 16.
LossReport sstv_k(const TreeIsingModel& a, const TreeIsingModel& b, int k);

/// E_{X_S} |P(X_i=+1 | X_S) - Q(X_i=+1 | X_S)|, exactly from marginal
/// tables; conditionals on zero-probability contexts use the uniform 1/2.
double conditional_prediction_error(const TreeIsingModel& p_true, const TreeIsingModel& q, Node i,
                                    const std::vector<Node>& subset);

/// D(P || Pi_t(P)) in closed form: sum of binary edge entropies on t minus
/// those on P's own structure (non-edges of a forest count as independent).
double kl_to_projection(const TreeIsingModel& p_true, const Forest& t);

/// J(a||b) = D(a||b) + D(b||a) = sum_{i<j} (theta_ij - theta'_ij)(mu_ij - mu'_ij)
/// with theta = 0 off-structure and mu the path-product correlation.
double symmetrized_kl(const TreeIsingModel& a, const TreeIsingModel& b);

/// Binary entropy in nats.
double binary_entropy(double q);

}  // namespace treelab
