#include "treelab/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "treelab/evaluation.hpp"

namespace treelab {

namespace {

void run_pool(int workers, std::uint64_t task_count, const std::function<void(std::uint64_t)>& fn) {
    workers = std::max(1, workers);
    if (workers == 1) {
        for (std::uint64_t t = 0; t < task_count; ++t) fn(t);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&]() {
            for (std::uint64_t t; (t = next.fetch_add(1)) < task_count;) fn(t);
        });
    for (auto& th : pool) th.join();
}

bool same_structure(const Forest& a, const Forest& b) { return a.edges() == b.edges(); }

}  // namespace

std::vector<SweepRow> sweep(const SweepConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
    for (std::size_t i = 1; i < cfg.n_grid.size(); ++i)
        if (cfg.n_grid[i] <= cfg.n_grid[i - 1])
            throw std::invalid_argument("n grid must be strictly increasing");
    if (cfg.n_grid.empty()) throw std::invalid_argument("empty n grid");

    const int p = cfg.model.node_count();
    const std::uint64_t total = cfg.n_grid.size() * static_cast<std::uint64_t>(cfg.trials);
    std::vector<SweepRow> rows(total);

    run_pool(cfg.workers, total, [&](std::uint64_t task) {
        const int gi = static_cast<int>(task / cfg.trials);
        const int trial = static_cast<int>(task % cfg.trials);
        const int n = cfg.n_grid[gi];
        const SeedSpec seed{cfg.master_seed, task};

        const auto t0 = std::chrono::steady_clock::now();
        const SampleMatrix samples = sample(cfg.model, n, seed);

        std::optional<ThresholdSpec> th;
        if (cfg.method == LearnMethod::truncation)
            th = ThresholdSpec::from(n, p, cfg.delta, cfg.model.max_abs_theta());
        const LearnedModel learned = fit(samples, cfg.method, th, seed);

        SweepRow row;
        row.n = n;
        row.trial = trial;
        row.structure_recovered =
            same_structure(learned.model.structure(), cfg.model.structure()) ? 1 : 0;
        row.sstv2_value = sstv2(cfg.model, learned.model).value;
        const double eps = hoeffding_epsilon(n, p, cfg.delta);
        const EventReport ev = check_events(cfg.model, samples, eps, cfg.eta);
        row.corr_ok = ev.corr_ok;
        row.strong_ok = ev.strong_ok;
        row.cascade_ok = ev.cascade_ok;
        row.runtime_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count();
        rows[task] = row;
    });
    return rows;
}

void write_sweep_csv(std::ostream& os, const SweepConfig& cfg, const std::vector<SweepRow>& rows) {
    os << "# tree-ising-lab v1\n";
    os << "# sweep method=" << to_string(cfg.method) << " seed=" << cfg.master_seed
       << " trials=" << cfg.trials << " delta=" << cfg.delta << " eta=" << cfg.eta << "\n";
    os << "# rng=mt19937_64 stream=splitmix64(master+(trial+1)*0x9E3779B97F4A7C15)\n";
    // runtime_ms stays out of the file: the CSV is byte-identical across
    // reruns, and wall-clock time is not.
    os << "n,trial,structure_recovered,sstv2,ecorr,estrong,ecascade\n";
    os << std::setprecision(17);
    for (const auto& r : rows)
        os << r.n << "," << r.trial << "," << r.structure_recovered << "," << r.sstv2_value << ","
           << (r.corr_ok ? 1 : 0) << "," << (r.strong_ok ? 1 : 0) << "," << (r.cascade_ok ? 1 : 0)
           << "\n";
}

ChainReproReport repro_chain(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
    const Tree chain(3, {{0, 1}, {1, 2}});
    const TreeIsingModel truth(chain, {{{0, 1}, std::atanh(epsilon)}, {{1, 2}, std::atanh(1.0 - epsilon)}});
    const CorrelationMatrix pop = truth.correlation_matrix();

    ChainReproReport rep;
    rep.epsilon = epsilon;
    rep.loss_true_chain = sstv2(truth, project(pop, chain)).value;
    rep.loss_forest = sstv2(truth, project(pop, Forest(3, {{1, 2}}))).value;
    rep.loss_wrong_tree = sstv2(truth, project(pop, Tree(3, {{0, 2}, {1, 2}}))).value;
    rep.doubled_forest = 2.0 * rep.loss_forest;
    rep.doubled_wrong_tree = 2.0 * rep.loss_wrong_tree;
    return rep;
}

TreeIsingModel chain_model(int p, const std::vector<double>& thetas) {
    if (p < 2 || thetas.size() != static_cast<std::size_t>(p - 1))
        throw std::invalid_argument("chain_model needs p-1 couplings");
    std::vector<Edge> edges;
    std::map<Edge, double> theta;
    for (int i = 0; i + 1 < p; ++i) {
        edges.push_back({i, i + 1});
        theta[{i, i + 1}] = thetas[i];
    }
    return TreeIsingModel(Tree(p, edges), theta);
}

TreeIsingModel star_model(int p, double th) {
    if (p < 2) throw std::invalid_argument("star_model needs p >= 2");
    std::vector<Edge> edges;
    std::map<Edge, double> theta;
    for (int i = 1; i < p; ++i) {
        edges.push_back({0, i});
        theta[{0, i}] = th;
    }
    return TreeIsingModel(Tree(p, edges), theta);
}

TreeIsingModel random_tree_model(int p, double alpha, double beta, const SeedSpec& seed) {
    if (p < 2) throw std::invalid_argument("random_tree_model needs p >= 2");
    if (!(alpha > 0.0 && alpha <= beta)) throw std::invalid_argument("need 0 < alpha <= beta");
    auto rng = seed.make_rng();
    auto u01 = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    std::vector<int> prufer(std::max(0, p - 2));
    for (int& s : prufer) s = static_cast<int>(rng() % static_cast<std::uint64_t>(p));
    Tree t = p == 2 ? Tree(2, {{0, 1}}) : tree_from_prufer(p, prufer);
    std::map<Edge, double> theta;
    for (const auto& e : t.edges()) {
        const double mag = alpha + (beta - alpha) * u01();
        theta[e] = (rng() & 1) ? mag : -mag;
    }
    return TreeIsingModel(t, theta);
}

TwoTreesSweepResult two_trees_exhaustive(int p, int workers) {
    const std::vector<Tree> trees = enumerate_spanning_trees(p);
    const std::uint64_t nt = trees.size();
    TwoTreesSweepResult total;
    total.tree_pairs = nt * nt;

    std::atomic<std::uint64_t> checked{0}, witnesses{0}, equal{0};
    run_pool(workers, nt, [&](std::uint64_t i) {
        const Tree& t1 = trees[i];
        std::uint64_t c = 0, wit = 0, eq = 0;
        for (const Tree& t2 : trees)
            for (Node w = 0; w < p; ++w)
                for (Node wt = w + 1; wt < p; ++wt) {
                    ++c;
                    if (two_trees_witness(t1, t2, w, wt))
                        ++wit;
                    else
                        ++eq;
                }
        checked += c;
        witnesses += wit;
        equal += eq;
    });
    total.node_pairs_checked = checked;
    total.witnesses_found = witnesses;
    total.equal_paths = equal;
    return total;
}

}  // namespace treelab
