#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "treelab/harness.hpp"

using namespace treelab;

namespace {

SweepConfig small_config(int workers) {
    SweepConfig cfg{chain_model(5, {0.6, 0.7, 0.5, 0.8})};
    cfg.n_grid = {100, 400};
    cfg.trials = 6;
    cfg.delta = 0.1;
    cfg.eta = 0.3;
    cfg.master_seed = 2024;
    cfg.workers = workers;
    return cfg;
}

std::string csv_of(const SweepConfig& cfg) {
    std::stringstream ss;
    write_sweep_csv(ss, cfg, sweep(cfg));
    return ss.str();
}

}  // namespace

TEST_CASE("sweep output is deterministic and worker-independent") {
    const std::string once = csv_of(small_config(1));
    CHECK(once == csv_of(small_config(1)));
    CHECK(once == csv_of(small_config(4)));
    CHECK(once.rfind("# tree-ising-lab v1\n", 0) == 0);
    CHECK(once.find("n,trial,structure_recovered,sstv2,") != std::string::npos);
}

TEST_CASE("sweep validates its config") {
    SweepConfig cfg = small_config(1);
    cfg.n_grid = {400, 100};
    CHECK_THROWS_AS(sweep(cfg), std::invalid_argument);
    cfg.n_grid = {};
    CHECK_THROWS_AS(sweep(cfg), std::invalid_argument);
    cfg.n_grid = {100};
    cfg.trials = 0;
    CHECK_THROWS_AS(sweep(cfg), std::invalid_argument);
}

TEST_CASE("sweep rows are well formed") {
    SweepConfig cfg = small_config(2);
    auto rows = sweep(cfg);
    REQUIRE(rows.size() == 12);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].n == cfg.n_grid[i / cfg.trials]);
        CHECK(rows[i].trial == static_cast<int>(i % cfg.trials));
        CHECK(rows[i].sstv2_value >= 0.0);
        CHECK(rows[i].sstv2_value <= 1.0);
    }
}

TEST_CASE("mean loss shrinks along the n grid") {
    SweepConfig cfg{chain_model(4, {0.5, 0.7, 0.6})};
    cfg.n_grid = {200, 1600};
    cfg.trials = 200;
    cfg.master_seed = 9;
    cfg.workers = 4;
    auto rows = sweep(cfg);
    double mean_small = 0.0, mean_big = 0.0;
    for (const auto& r : rows)
        (r.n == 200 ? mean_small : mean_big) += r.sstv2_value / cfg.trials;
    CHECK(mean_big <= mean_small + 0.01);
}

TEST_CASE("repro_chain closed-form values") {
    ChainReproReport rep = repro_chain(0.1);
    CHECK(rep.loss_true_chain == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(rep.loss_forest == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(rep.loss_wrong_tree == doctest::Approx(0.0095).epsilon(1e-10));
    CHECK(rep.doubled_forest == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(rep.doubled_wrong_tree == doctest::Approx(0.019).epsilon(1e-10));

    for (double eps : {0.01, 0.05, 0.1, 0.3, 0.49}) {
        ChainReproReport r = repro_chain(eps);
        CHECK(r.loss_true_chain < r.loss_wrong_tree);
        CHECK(r.loss_wrong_tree < r.loss_forest);
    }
    // loss(T3)/loss(T2) -> 0 with eps
    CHECK(repro_chain(1e-4).loss_wrong_tree / repro_chain(1e-4).loss_forest < 1e-3);
    CHECK_THROWS_AS(repro_chain(0.0), std::invalid_argument);
    CHECK_THROWS_AS(repro_chain(1.0), std::invalid_argument);
}

TEST_CASE("model generators") {
    TreeIsingModel chain = chain_model(4, {0.1, 0.2, 0.3});
    CHECK(chain.structure().edges() == std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}});
    CHECK(chain.theta(2, 3) == 0.3);
    CHECK_THROWS_AS(chain_model(4, {0.1}), std::invalid_argument);

    TreeIsingModel star = star_model(5, -0.4);
    CHECK(star.structure().edges() == std::vector<Edge>{{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    CHECK(star.theta(0, 4) == -0.4);

    TreeIsingModel r1 = random_tree_model(9, 0.2, 0.9, SeedSpec{5, 1});
    TreeIsingModel r2 = random_tree_model(9, 0.2, 0.9, SeedSpec{5, 1});
    CHECK(r1.structure() == r2.structure());
    for (const auto& e : r1.structure().edges()) {
        CHECK(r1.theta(e.first, e.second) == r2.theta(e.first, e.second));
        const double mag = std::fabs(r1.theta(e.first, e.second));
        CHECK(mag >= 0.2);
        CHECK(mag <= 0.9);
    }
    CHECK(random_tree_model(9, 0.2, 0.9, SeedSpec{6, 1}).structure().edges() !=
          r1.structure().edges());
    CHECK_THROWS_AS(random_tree_model(1, 0.2, 0.9, SeedSpec{0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(random_tree_model(5, 0.9, 0.2, SeedSpec{0, 0}), std::invalid_argument);
}
