#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "oracle.hpp"
#include "treelab/harness.hpp"
#include "treelab/learners.hpp"
#include "treelab/verification.hpp"

using namespace treelab;

namespace {

bool on_path(const Tree& t, Node a, Node b, const Edge& e) {
    auto p = t.path(a, b);
    return std::find(p.begin(), p.end(), make_edge(e.first, e.second)) != p.end();
}

// Independent re-check of the full witness property list.
void check_witness(const Tree& t1, const Tree& t2, Node w, Node wt, const TwoTreesWitness& wit) {
    const Edge f = make_edge(wit.f.first, wit.f.second);
    const Edge g = make_edge(wit.g.first, wit.g.second);
    CHECK(on_path(t1, w, wt, f));
    CHECK(on_path(t2, w, wt, g));
    CHECK_FALSE(on_path(t2, w, wt, f));
    CHECK_FALSE(on_path(t1, w, wt, g));
    CHECK(on_path(t1, wit.g.first, wit.g.second, f));
    CHECK(on_path(t2, wit.f.first, wit.f.second, g));
    // orientation: u and v on w's side of f in t1
    CHECK_FALSE(on_path(t1, w, wit.f.first, f));
    CHECK(on_path(t1, w, wit.f.second, f));
    CHECK_FALSE(on_path(t1, w, wit.g.first, f));
    CHECK(on_path(t1, w, wit.g.second, f));
}

}  // namespace

TEST_CASE("three-node witness example") {
    Tree t1(3, {{0, 1}, {1, 2}});
    Tree t2(3, {{0, 2}, {1, 2}});
    auto wit = two_trees_witness(t1, t2, 0, 1);
    REQUIRE(wit.has_value());
    CHECK(wit->f == Edge{0, 1});
    CHECK(wit->g == Edge{0, 2});
    check_witness(t1, t2, 0, 1, *wit);
}

TEST_CASE("identical trees have equal paths") {
    Tree t = tree_from_prufer(6, {1, 3, 3, 0});
    for (Node w = 0; w < 6; ++w)
        for (Node wt = w; wt < 6; ++wt) CHECK_FALSE(two_trees_witness(t, t, w, wt).has_value());
}

TEST_CASE("exhaustive witness sweep at p=4") {
    auto trees = enumerate_spanning_trees(4);
    int found = 0;
    for (const Tree& t1 : trees)
        for (const Tree& t2 : trees)
            for (Node w = 0; w < 4; ++w)
                for (Node wt = w + 1; wt < 4; ++wt) {
                    auto wit = two_trees_witness(t1, t2, w, wt);  // throws on counterexample
                    if (wit) {
                        check_witness(t1, t2, w, wt, *wit);
                        ++found;
                    }
                }
    CHECK(found > 0);
}

TEST_CASE("two_trees_exhaustive counters") {
    auto res = two_trees_exhaustive(4, 2);
    CHECK(res.tree_pairs == 16 * 16);
    CHECK(res.node_pairs_checked == 16 * 16 * 6);
    CHECK(res.witnesses_found + res.equal_paths == res.node_pairs_checked);
    CHECK(res.witnesses_found > 0);
}

TEST_CASE("zy statistics population means") {
    TreeIsingModel m = chain_model(4, {0.6, 0.8, -0.4});
    SampleMatrix s = sample(m, 1000, SeedSpec{3, 0});

    // adjacent pair across the edge itself: A empty, mu_A = 1
    PathStatistics adj = zy_statistics(s, m, {1, 2}, 1, 2);
    CHECK(adj.mean_z == 0.0);
    CHECK(adj.mean_y == doctest::Approx(2.0 * std::tanh(0.8)).epsilon(1e-12));
    CHECK(adj.z_sum == 0);  // Z = X1X2 - X1X2 identically

    PathStatistics st = zy_statistics(s, m, {1, 2}, 0, 3);
    const double mu_e = std::tanh(0.8);
    const double mu_a = std::tanh(0.6) * std::tanh(-0.4);
    CHECK(st.mu_e == doctest::Approx(mu_e).epsilon(1e-12));
    CHECK(st.mu_rest == doctest::Approx(mu_a).epsilon(1e-12));
    CHECK(st.mean_z == doctest::Approx(mu_e * (1.0 - mu_a)).epsilon(1e-12));
    CHECK(st.mean_y == doctest::Approx(mu_e * (1.0 + mu_a)).epsilon(1e-12));
    CHECK(st.z_sum + st.y_sum == 2 * [&] {
        long long acc = 0;
        for (int r = 0; r < s.n; ++r) acc += s.at(r, 1) * s.at(r, 2);
        return acc;
    }());

    CHECK_THROWS_AS(zy_statistics(s, m, {0, 1}, 2, 3), std::invalid_argument);
}

TEST_CASE("swapped edge yields negative zy product") {
    // weak middle edge; find a seeded trial where Chow-Liu misses it
    TreeIsingModel m = chain_model(4, {std::atanh(0.9), std::atanh(0.05), std::atanh(0.9)});
    bool found = false;
    for (std::uint64_t trial = 0; trial < 50 && !found; ++trial) {
        SampleMatrix s = sample(m, 400, SeedSpec{1234, trial});
        Tree learned = chow_liu(empirical_correlations(s));
        const Edge f{1, 2};
        if (learned.has_edge(1, 2)) continue;
        // g: learned-tree edge on the learned path between f's endpoints,
        // absent from the truth, with f on the true path between its endpoints
        for (const Edge& g : learned.path(1, 2)) {
            if (m.structure().has_edge(g.first, g.second)) continue;
            if (!on_path(Tree(4, m.structure().edges()), g.first, g.second, f)) continue;
            PathStatistics st = zy_statistics(s, m, f, g.first, g.second);
            CHECK(st.z_sum * st.y_sum <= 0);
            CHECK(st.mean_z * st.mean_y >= 0.0);
            found = true;
            break;
        }
    }
    CHECK(found);
}

TEST_CASE("z deviation bound frequency") {
    TreeIsingModel m = chain_model(4, {0.4, 0.7, -0.5});
    const int n = 500, trials = 200;
    const double delta = 0.1;
    const double eps = hoeffding_epsilon(n, 4, delta);
    const Edge e{1, 2};
    const Node u = 0, ut = 3;
    int ok = 0;
    double mu_a = 0.0, mean_z = 0.0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        SampleMatrix s = sample(m, n, SeedSpec{2222, t});
        PathStatistics st = zy_statistics(s, m, e, u, ut);
        mu_a = st.mu_rest;
        mean_z = st.mean_z;
        const double dev = std::fabs(static_cast<double>(st.z_sum) - n * st.mean_z);
        const double bound = std::max(16.0 * n * eps * eps, 4.0 * n * eps * std::sqrt(1.0 - mu_a));
        if (dev <= bound) ++ok;
    }
    (void)mean_z;
    CHECK(static_cast<double>(ok) / trials >= 1.0 - delta / 2.0);
}

TEST_CASE("check_events basics") {
    TreeIsingModel m = chain_model(4, {0.5, 0.8, -0.6});
    SampleMatrix s = sample(m, 50, SeedSpec{31, 0});
    EventReport always = check_events(m, s, 2.0, 2.0);
    CHECK(always.corr_ok);
    CHECK(always.cascade_ok);

    SampleMatrix big = sample(m, 1000000, SeedSpec{32, 0});
    const double eps = hoeffding_epsilon(1000000, 4, 0.1);
    EventReport r = check_events(m, big, eps, 0.1);
    CHECK(r.corr_ok);
    CHECK(r.strong_ok);
    CHECK(r.cascade_ok);
    CHECK(r.max_corr_deviation <= eps);
    CHECK(r.missed_strong_edges.empty());

    SampleMatrix wrong;
    wrong.n = 1;
    wrong.p = 3;
    wrong.spins = {1, 1, 1};
    CHECK_THROWS_AS(check_events(m, wrong, 0.1, 0.1), std::invalid_argument);
}

TEST_CASE("corr event frequency meets the bound") {
    const int p = 6, n = 500, trials = 200;
    const double delta = 0.1;
    const double eps = hoeffding_epsilon(n, p, delta);
    TreeIsingModel m = random_tree_model(p, 0.2, 1.0, SeedSpec{7000, 0});
    int ok = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        SampleMatrix s = sample(m, n, SeedSpec{7001, t});
        if (check_events(m, s, eps, 0.5).corr_ok) ++ok;
    }
    const double bound = 1.0 - 2.0 * p * p * std::exp(-n * eps * eps / 2.0);
    CHECK(static_cast<double>(ok) / trials >= bound);
    CHECK(static_cast<double>(ok) / trials >= 1.0 - delta);
}

TEST_CASE("missing true edges are weak when correlations are accurate") {
    TreeIsingModel m = chain_model(6, {std::atanh(0.9), std::atanh(0.9), std::atanh(0.05),
                                       std::atanh(0.9), std::atanh(0.9)});
    const int n = 1500;
    const double eps = hoeffding_epsilon(n, 6, 0.1);
    const double tau = strong_edge_threshold(eps, m.max_abs_theta());
    for (std::uint64_t t = 0; t < 100; ++t) {
        SampleMatrix s = sample(m, n, SeedSpec{8100, t});
        EventReport r = check_events(m, s, eps, 1.0);
        if (!r.corr_ok) continue;
        Tree learned = chow_liu(empirical_correlations(s));
        for (const auto& e : m.structure().edges())
            if (!learned.has_edge(e.first, e.second))
                CHECK(std::fabs(m.mu(e.first, e.second)) <= tau);
    }
}

TEST_CASE("witness pair correlation bracket") {
    // bracket |mu_f| - 4 eps <= |mu_g| <= |mu_f| on trials with
    // accurate correlations, for witness pairs of (truth, learned) trees.
    TreeIsingModel m = chain_model(5, {std::atanh(0.9), std::atanh(0.08), std::atanh(0.9),
                                       std::atanh(0.08)});
    const int n = 1200;
    const double eps = hoeffding_epsilon(n, 5, 0.1);
    int inspected = 0;
    for (std::uint64_t t = 0; t < 200; ++t) {
        SampleMatrix s = sample(m, n, SeedSpec{9100, t});
        EventReport r = check_events(m, s, eps, 1.0);
        if (!r.corr_ok) continue;
        Tree truth(5, m.structure().edges());
        Tree learned = chow_liu(empirical_correlations(s));
        if (learned.edges() == truth.edges()) continue;
        for (const auto& e : truth.edges()) {
            if (learned.has_edge(e.first, e.second)) continue;
            auto wit = two_trees_witness(truth, learned, e.first, e.second);
            REQUIRE(wit.has_value());
            const double mu_f = std::fabs(m.pairwise_correlation(wit->f.first, wit->f.second));
            const double mu_g = std::fabs(m.pairwise_correlation(wit->g.first, wit->g.second));
            CHECK(mu_g <= mu_f + 1e-12);
            CHECK(mu_g >= mu_f - 4.0 * eps - 1e-12);
            ++inspected;
        }
    }
    CHECK(inspected > 0);
}

TEST_CASE("product concentration") {
    auto zero = product_concentration_check({0.0, 0.0, 0.0}, 1000, 0.5, 400, 77);
    CHECK(zero.trials == 400);
    CHECK(zero.exceedance_rate <= zero.bound);

    auto det = product_concentration_check({1.0, -1.0}, 100, 0.1, 50, 78);
    CHECK(det.exceedance_rate == 0.0);

    auto single = product_concentration_check({0.3}, 2000, 0.2, 300, 79);
    CHECK(single.exceedance_rate <= std::min(1.0, single.bound));
    CHECK(single.exceedance_rate <= 2.0 * std::exp(-2000 * 0.04 / 2.0) + 0.05);

    CHECK_THROWS_AS(product_concentration_check({1.5}, 10, 0.1, 10, 0), std::invalid_argument);
    CHECK_THROWS_AS(product_concentration_check({}, 10, 0.1, 10, 0), std::invalid_argument);
}
