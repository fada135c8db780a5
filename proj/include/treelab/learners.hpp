#pragma once

#include <optional>
#include <string>

#include "treelab/estimation.hpp"
#include "treelab/model.hpp"
#include "treelab/sampling.hpp"

namespace treelab {

enum class LearnMethod { chow_liu, truncation };

std::string to_string(LearnMethod m);

/// Maximum-weight spanning tree of the complete graph under weights
/// |mu_ij|, via Kruskal with union-find. Ties broken toward the
/// lexicographically smaller (i,j) pair.
Tree chow_liu(const CorrelationMatrix& c);

/// Maximum-weight spanning forest under weights |mu_ij| - tau - epsilon,
/// keeping only positive-weight edges. Equals the Chow-Liu tree with
/// edges |mu_e| < tau + epsilon removed.
Forest truncation(const CorrelationMatrix& c, const ThresholdSpec& th);

/// Moment-matching projection: model on t with theta_e = atanh(mu_e),
/// |mu_e| clamped to 1 - 1e-9 to keep couplings finite.
TreeIsingModel project(const CorrelationMatrix& c, const Forest& t);

struct LearnedModel {
    TreeIsingModel model;
    LearnMethod method;
    std::optional<ThresholdSpec> thresholds;
    // provenance
    int n = 0;
    std::optional<SeedSpec> seed;
};

/// End-to-end learner: empirical correlations -> structure -> projection.
/// Truncation requires thresholds.
LearnedModel fit(const SampleMatrix& s, LearnMethod method,
                 std::optional<ThresholdSpec> th = std::nullopt,
                 std::optional<SeedSpec> seed = std::nullopt);

}  // namespace treelab
