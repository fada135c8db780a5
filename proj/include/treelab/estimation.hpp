#pragma once

#include "treelab/model.hpp"
#include "treelab/sampling.hpp"

namespace treelab {

/// Deviation radius and strong-edge threshold, together with the inputs
/// they were derived from.
struct ThresholdSpec {
    double epsilon = 0.0;  // Hoeffding radius
    double tau = 0.0;      // 4*epsilon / sqrt(1 - tanh(beta))
    int n = 0;
    int p = 0;
    double delta = 0.0;
    double beta = 0.0;

    static ThresholdSpec from(int n, int p, double delta, double beta);
};

/// epsilon = sqrt((2/n) * ln(2 p^2 / delta)).
double hoeffding_epsilon(int n, int p, double delta);

/// tau = 4*epsilon / sqrt(1 - tanh(beta)); always <= 4*epsilon*e^beta.
double strong_edge_threshold(double epsilon, double beta);

/// Entry (i,j) = (1/n) sum_l X_i X_j, accumulated in integers.
CorrelationMatrix empirical_correlations(const SampleMatrix& s);

}  // namespace treelab
