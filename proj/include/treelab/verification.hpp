#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "treelab/estimation.hpp"
#include "treelab/model.hpp"
#include "treelab/sampling.hpp"

namespace treelab {

/// Indicators and margins for the three high-probability events on one trial.
struct EventReport {
    std::uint64_t trial = 0;
    double epsilon = 0.0;
    double gamma = 0.0;
    double tau = 0.0;

    double max_corr_deviation = 0.0;   // max_{i<j} |mu_ij - muhat_ij|
    double cascade_deviation = 0.0;    // sstv2(true, projection of muhat onto true tree)
    std::vector<Edge> missed_strong_edges;

    bool corr_ok = false;     // max_corr_deviation <= epsilon
    bool strong_ok = false;   // every |mu_e| >= tau edge appears in the Chow-Liu tree
    bool cascade_ok = false;  // cascade_deviation <= gamma
};

/// Pair of swapped edges certifying how two spanning trees' paths differ.
/// f lies on t1's w-wtilde path only, g on t2's; f is on t1's path between
/// g's endpoints and vice versa; endpoint labels put u, v on w's side of f.
struct TwoTreesWitness {
    Edge f;  // oriented (u, utilde): u on w's side in t1
    Edge g;  // oriented (v, vtilde): v on w's side
};

/// Exhaustive search over the two paths for a witness pair; nullopt means
/// the paths are equal. Throws if no pair satisfies the properties (which
/// should be impossible: a witness always exists for differing paths).
std::optional<TwoTreesWitness> two_trees_witness(const Tree& t1, const Tree& t2, Node w,
                                                 Node wtilde);

/// Per-sample swap statistics across edge e = (w, wtilde) against the pair
/// (u, utilde): Z = X_w X_wt - X_u X_ut and Y = X_w X_wt + X_u X_ut.
struct PathStatistics {
    Edge e;
    Node u = 0, utilde = 0;
    long long z_sum = 0;
    long long y_sum = 0;
    double mu_e = 0.0;
    double mu_rest = 0.0;    // product along path(u, utilde) minus e
    double mean_z = 0.0;     // mu_e * (1 - mu_rest)
    double mean_y = 0.0;     // mu_e * (1 + mu_rest)
};

/// Requires e to lie on the true-tree path between u and utilde.
PathStatistics zy_statistics(const SampleMatrix& s, const TreeIsingModel& m_true, Edge e, Node u,
                             Node utilde);

/// Exact indicators for the correlation-accuracy, strong-edge-recovery and
/// cascade events on one sample matrix. tau is derived from epsilon and
/// the model's own max |theta|.
EventReport check_events(const TreeIsingModel& m_true, const SampleMatrix& s, double epsilon,
                         double gamma);

/// Monte-Carlo exceedance rate of |prod muhat_j - prod mu_j| >= gamma for
/// d independent +-1 factors, plus the theoretical tail bound
/// (8/gamma) exp(-gamma^2 n / 32).
struct ProductConcentrationResult {
    double exceedance_rate = 0.0;
    double bound = 0.0;
    int trials = 0;
};

ProductConcentrationResult product_concentration_check(const std::vector<double>& mus, int n,
                                                       double gamma, int trials,
                                                       std::uint64_t master_seed);

}  // namespace treelab
