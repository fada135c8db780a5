// tree-ising-lab command-line front end.
//
// Exit codes: 0 success, 1 assertion/runtime failure, 2 usage error.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "treelab/estimation.hpp"
#include "treelab/evaluation.hpp"
#include "treelab/harness.hpp"
#include "treelab/learners.hpp"
#include "treelab/model.hpp"
#include "treelab/sampling.hpp"
#include "treelab/verification.hpp"

using namespace treelab;

namespace {

// Writes to --out when given, stdout otherwise.
class Output {
  public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

std::string family_member_path(const std::string& out, std::size_t index) {
    const auto dot = out.rfind('.');
    const auto slash = out.rfind('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return out + "." + std::to_string(index);
    return out.substr(0, dot) + "." + std::to_string(index) + out.substr(dot);
}

LearnMethod parse_method(const std::string& name) {
    if (name == "chow-liu") return LearnMethod::chow_liu;
    if (name == "truncate") return LearnMethod::truncation;
    throw CLI::ValidationError("--method", "expected chow-liu or truncate");
}

int default_workers() {
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

void csv_header(std::ostream& os) { os << "# tree-ising-lab v1\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tree-structured Ising models: learning, evaluation, verification"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::uint64_t seed = 0;
    int workers = default_workers();
    std::string out;
    app.add_option("--seed", seed, "master seed")->capture_default_str();
    app.add_option("--workers", workers, "worker thread count")->capture_default_str();
    app.add_option("--out", out, "output file (default: stdout)");

    // gen-model
    auto* gen = app.add_subcommand("gen-model", "write model file(s)");
    std::string kind;
    int gen_p = 0;
    double gen_alpha = 0.2, gen_beta = 1.0, gen_eta = 0.5;
    std::vector<double> gen_thetas;
    gen->add_option("--kind", kind, "random-tree|chain|star|hard-family|chain-family")
        ->required()
        ->check(CLI::IsMember({"random-tree", "chain", "star", "hard-family", "chain-family"}));
    gen->add_option("--p", gen_p, "node count")->required();
    gen->add_option("--alpha", gen_alpha, "min |theta| (random-tree, hard-family)");
    gen->add_option("--beta", gen_beta, "max |theta| / strong coupling");
    gen->add_option("--eta", gen_eta, "edge correlation (chain-family)");
    gen->add_option("--theta", gen_thetas, "explicit couplings (chain, star)");

    // sample
    auto* smp = app.add_subcommand("sample", "draw i.i.d. samples from a model");
    std::string smp_model;
    int smp_n = 0;
    std::uint64_t smp_trial = 0;
    bool smp_binary = false;
    smp->add_option("--model", smp_model, "model file")->required();
    smp->add_option("--n", smp_n, "sample count")->required();
    smp->add_option("--trial", smp_trial, "trial index for the seed stream");
    smp->add_flag("--binary", smp_binary, "compact binary sample format");

    // learn
    auto* lrn = app.add_subcommand("learn", "fit a model from a sample file");
    std::string lrn_method = "chow-liu", lrn_samples;
    double lrn_delta = 0.1, lrn_beta = -1.0, lrn_tau = -1.0, lrn_eps = -1.0;
    lrn->add_option("--method", lrn_method, "chow-liu|truncate")
        ->check(CLI::IsMember({"chow-liu", "truncate"}));
    lrn->add_option("--samples", lrn_samples, "sample file")->required();
    lrn->add_option("--delta", lrn_delta, "failure probability (truncate)");
    lrn->add_option("--beta", lrn_beta, "max |theta| assumed by truncate");
    lrn->add_option("--tau", lrn_tau, "override the derived tau");
    lrn->add_option("--epsilon", lrn_eps, "override the derived epsilon");

    // eval
    auto* evl = app.add_subcommand("eval", "loss between two models");
    std::string loss, model_a, model_b;
    int evl_k = 2, evl_node = 0;
    std::vector<int> evl_subset;
    evl->add_option("--loss", loss, "sstv2|sstv-k|kl-proj|symkl|cond")
        ->required()
        ->check(CLI::IsMember({"sstv2", "sstv-k", "kl-proj", "symkl", "cond"}));
    evl->add_option("--model-a", model_a, "first model file")->required();
    evl->add_option("--model-b", model_b, "second model file")->required();
    evl->add_option("--k", evl_k, "subset size (sstv-k)");
    evl->add_option("--node", evl_node, "query node (cond)");
    evl->add_option("--subset", evl_subset, "conditioning set (cond)");

    // sweep
    auto* swp = app.add_subcommand("sweep", "sample/fit/evaluate over an n grid");
    std::string swp_model, swp_method = "chow-liu";
    std::vector<int> n_grid;
    int swp_trials = 10;
    double swp_delta = 0.1, swp_eta = 0.1;
    swp->add_option("--model", swp_model, "true model file")->required();
    swp->add_option("--n-grid", n_grid, "strictly increasing sample counts")->required();
    swp->add_option("--trials", swp_trials, "trials per grid point");
    swp->add_option("--delta", swp_delta, "failure probability");
    swp->add_option("--eta", swp_eta, "cascade tolerance gamma");
    swp->add_option("--method", swp_method, "chow-liu|truncate")
        ->check(CLI::IsMember({"chow-liu", "truncate"}));

    // verify
    auto* vfy = app.add_subcommand("verify", "invariant checkers");
    std::string suite, vfy_model;
    int vfy_p = 5, vfy_trials = 100, vfy_n = 1000;
    double vfy_delta = 0.1, vfy_gamma = 0.2;
    std::vector<double> vfy_mus;
    vfy->add_option("--suite", suite, "two-trees|events|zy|product")
        ->required()
        ->check(CLI::IsMember({"two-trees", "events", "zy", "product"}));
    vfy->add_option("--p", vfy_p, "node count (two-trees)");
    vfy->add_option("--model", vfy_model, "true model file (events, zy)");
    vfy->add_option("--n", vfy_n, "samples per trial");
    vfy->add_option("--trials", vfy_trials, "trial count");
    vfy->add_option("--delta", vfy_delta, "failure probability");
    vfy->add_option("--gamma", vfy_gamma, "cascade/product tolerance");
    vfy->add_option("--mus", vfy_mus, "factor means (product)");

    // repro-chain
    auto* rpc = app.add_subcommand("repro-chain", "three-node chain loss table");
    double rpc_eps = 0.1;
    rpc->add_option("--epsilon", rpc_eps, "weak-edge correlation")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (gen->parsed()) {
            if (kind == "chain" || kind == "star") {
                TreeIsingModel m =
                    kind == "chain"
                        ? chain_model(gen_p, gen_thetas.empty()
                                                 ? std::vector<double>(gen_p - 1, gen_beta)
                                                 : gen_thetas)
                        : star_model(gen_p, gen_thetas.empty() ? gen_beta : gen_thetas.at(0));
                Output o(out);
                write_model(o.stream(), m);
            } else if (kind == "random-tree") {
                Output o(out);
                write_model(o.stream(), random_tree_model(gen_p, gen_alpha, gen_beta, SeedSpec{seed, 0}));
            } else {
                auto fam = kind == "hard-family" ? hard_family(gen_p, gen_alpha, gen_beta)
                                                 : chain_family(gen_p, gen_eta);
                if (out.empty()) {
                    for (const auto& m : fam) write_model(std::cout, m);
                } else {
                    for (std::size_t i = 0; i < fam.size(); ++i)
                        write_model_file(family_member_path(out, i), fam[i]);
                    std::cout << fam.size() << " model files written\n";
                }
            }
        } else if (smp->parsed()) {
            TreeIsingModel m = read_model_file(smp_model);
            SeedSpec ss{seed, smp_trial};
            SampleMatrix s = sample(m, smp_n, ss);
            Output o(out);
            if (smp_binary)
                write_samples_binary(o.stream(), s, ss);
            else
                write_samples(o.stream(), s, ss);
        } else if (lrn->parsed()) {
            SampleMatrix s = read_samples_file(lrn_samples);
            const LearnMethod method = parse_method(lrn_method);
            std::optional<ThresholdSpec> th;
            if (method == LearnMethod::truncation) {
                if (lrn_beta < 0.0 && lrn_tau < 0.0)
                    throw std::runtime_error("truncate needs --beta (or explicit --tau)");
                ThresholdSpec spec;
                if (lrn_beta >= 0.0) spec = ThresholdSpec::from(s.n, s.p, lrn_delta, lrn_beta);
                if (lrn_eps >= 0.0) spec.epsilon = lrn_eps;
                if (lrn_tau >= 0.0) spec.tau = lrn_tau;
                th = spec;
            }
            LearnedModel learned = fit(s, method, th);
            Output o(out);
            write_model(o.stream(), learned.model);
        } else if (evl->parsed()) {
            TreeIsingModel a = read_model_file(model_a);
            TreeIsingModel b = read_model_file(model_b);
            std::string name = loss;
            double value = 0.0;
            std::vector<Node> argmax;
            if (loss == "sstv2") {
                LossReport r = sstv2(a, b);
                value = r.value;
                argmax = r.argmax_subset;
            } else if (loss == "sstv-k") {
                LossReport r = sstv_k(a, b, evl_k);
                value = r.value;
                argmax = r.argmax_subset;
            } else if (loss == "kl-proj") {
                value = kl_to_projection(a, b.structure());
            } else if (loss == "symkl") {
                value = symmetrized_kl(a, b);
            } else {
                value = conditional_prediction_error(a, b, evl_node, evl_subset);
                argmax = evl_subset;
            }
            Output o(out);
            csv_header(o.stream());
            o.stream() << "loss,value,argmax_subset\n"
                       << name << "," << std::setprecision(17) << value << ",";
            for (std::size_t i = 0; i < argmax.size(); ++i)
                o.stream() << (i ? " " : "") << argmax[i];
            o.stream() << "\n";
        } else if (swp->parsed()) {
            SweepConfig cfg{read_model_file(swp_model)};
            cfg.n_grid = n_grid;
            cfg.trials = swp_trials;
            cfg.delta = swp_delta;
            cfg.eta = swp_eta;
            cfg.method = parse_method(swp_method);
            cfg.master_seed = seed;
            cfg.workers = workers;
            auto rows = sweep(cfg);
            Output o(out);
            write_sweep_csv(o.stream(), cfg, rows);
        } else if (vfy->parsed()) {
            Output o(out);
            std::ostream& os = o.stream();
            csv_header(os);
            os << "suite,instance,pass,margin\n" << std::setprecision(17);
            bool all_ok = true;
            if (suite == "two-trees") {
                TwoTreesSweepResult r = two_trees_exhaustive(vfy_p, workers);
                os << "two-trees,p=" << vfy_p << ",1," << r.witnesses_found << "\n";
            } else if (suite == "events") {
                if (vfy_model.empty()) throw std::runtime_error("events needs --model");
                TreeIsingModel m = read_model_file(vfy_model);
                const double eps = hoeffding_epsilon(vfy_n, m.node_count(), vfy_delta);
                int corr = 0;
                for (int t = 0; t < vfy_trials; ++t) {
                    SampleMatrix s = sample(m, vfy_n, SeedSpec{seed, static_cast<std::uint64_t>(t)});
                    EventReport r = check_events(m, s, eps, vfy_gamma);
                    corr += r.corr_ok;
                    os << "events,trial=" << t << ","
                       << (r.corr_ok && r.strong_ok && r.cascade_ok ? 1 : 0) << ","
                       << r.max_corr_deviation << "\n";
                }
                const double freq = static_cast<double>(corr) / vfy_trials;
                all_ok = freq >= 1.0 - vfy_delta;
                os << "events,corr-frequency," << (all_ok ? 1 : 0) << "," << freq << "\n";
            } else if (suite == "zy") {
                if (vfy_model.empty()) throw std::runtime_error("zy needs --model");
                TreeIsingModel m = read_model_file(vfy_model);
                const int p = m.node_count();
                const double eps = hoeffding_epsilon(vfy_n, p, vfy_delta);
                for (int t = 0; t < vfy_trials; ++t) {
                    SampleMatrix s = sample(m, vfy_n, SeedSpec{seed, static_cast<std::uint64_t>(t)});
                    for (Node u = 0; u < p; ++u)
                        for (Node ut = u + 1; ut < p; ++ut) {
                            auto path = m.structure().path_between(u, ut);
                            if (!path) continue;
                            for (const Edge& e : *path) {
                                PathStatistics st = zy_statistics(s, m, e, u, ut);
                                const double dev =
                                    std::fabs(static_cast<double>(st.z_sum) - vfy_n * st.mean_z);
                                const double bound =
                                    std::max(16.0 * vfy_n * eps * eps,
                                             4.0 * vfy_n * eps * std::sqrt(1.0 - st.mu_rest));
                                const bool ok = dev <= bound;
                                all_ok = all_ok && ok;
                                os << "zy,trial=" << t << ":e=(" << e.first << ";" << e.second
                                   << "):pair=(" << u << ";" << ut << ")," << (ok ? 1 : 0) << ","
                                   << bound - dev << "\n";
                            }
                        }
                }
            } else {
                if (vfy_mus.empty()) throw std::runtime_error("product needs --mus");
                ProductConcentrationResult r =
                    product_concentration_check(vfy_mus, vfy_n, vfy_gamma, vfy_trials, seed);
                const bool ok = r.exceedance_rate <= std::min(1.0, r.bound);
                all_ok = ok;
                os << "product,d=" << vfy_mus.size() << "," << (ok ? 1 : 0) << ","
                   << r.bound - r.exceedance_rate << "\n";
            }
            if (!all_ok) {
                std::cerr << "verify: assertion failed\n";
                return 1;
            }
        } else if (rpc->parsed()) {
            ChainReproReport r = repro_chain(rpc_eps);
            Output o(out);
            csv_header(o.stream());
            o.stream() << std::setprecision(17)
                       << "structure,loss,doubled\n"
                       << "true-chain," << r.loss_true_chain << "," << 2.0 * r.loss_true_chain
                       << "\n"
                       << "forest," << r.loss_forest << "," << r.doubled_forest << "\n"
                       << "wrong-tree," << r.loss_wrong_tree << "," << r.doubled_wrong_tree
                       << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
