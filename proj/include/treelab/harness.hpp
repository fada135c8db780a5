#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "treelab/learners.hpp"
#include "treelab/model.hpp"
#include "treelab/verification.hpp"

namespace treelab {

struct SweepConfig {
    TreeIsingModel model;
    std::vector<int> n_grid;     // strictly increasing
    int trials = 1;              // per grid point
    double delta = 0.1;
    double eta = 0.1;            // cascade tolerance gamma
    LearnMethod method = LearnMethod::chow_liu;
    std::uint64_t master_seed = 0;
    int workers = 1;
};

struct SweepRow {
    int n = 0;
    int trial = 0;
    int structure_recovered = 0;  // complement of the zero-one structure loss
    double sstv2_value = 0.0;     // learned model vs truth
    bool corr_ok = false;
    bool strong_ok = false;
    bool cascade_ok = false;
    double runtime_ms = 0.0;
};

/// One (sample, fit, evaluate) pass per (n, trial). Trials run on a worker
/// pool; the per-trial seed is SeedSpec{master, grid_index*trials + trial},
/// so output is byte-identical regardless of worker count.
std::vector<SweepRow> sweep(const SweepConfig& cfg);

/// Versioned CSV: `# tree-ising-lab v1` header, named columns, one row per
/// (n, trial) in grid order.
void write_sweep_csv(std::ostream& os, const SweepConfig& cfg, const std::vector<SweepRow>& rows);

/// Three-node chain study: P has mu_01 = eps and mu_12 = 1 - eps; losses
/// are sstv2(P, projection of P's population correlations onto T) for the
/// true chain, the single-edge forest {(1,2)}, and the tree {(0,2),(1,2)}.
/// Doubled values reproduce the alternative no-half-TV convention.
struct ChainReproReport {
    double epsilon = 0.0;
    double loss_true_chain = 0.0;   // 0
    double loss_forest = 0.0;       // eps / 2
    double loss_wrong_tree = 0.0;   // eps^2 (2 - eps) / 2
    double doubled_forest = 0.0;
    double doubled_wrong_tree = 0.0;
};

ChainReproReport repro_chain(double epsilon);

/// Model generators behind the `gen-model` CLI.
TreeIsingModel chain_model(int p, const std::vector<double>& thetas);
TreeIsingModel star_model(int p, double theta);  // hub at node 0
/// Uniform random labeled tree (random Prufer sequence), i.i.d. couplings
/// with |theta| uniform in [alpha, beta] and independent random sign.
TreeIsingModel random_tree_model(int p, double alpha, double beta, const SeedSpec& seed);

/// Exhaustive two-trees sweep: every ordered pair of spanning trees on p
/// nodes and every node pair. Throws if any instance has no witness.
struct TwoTreesSweepResult {
    std::uint64_t tree_pairs = 0;
    std::uint64_t node_pairs_checked = 0;
    std::uint64_t witnesses_found = 0;
    std::uint64_t equal_paths = 0;
};

TwoTreesSweepResult two_trees_exhaustive(int p, int workers);

}  // namespace treelab
