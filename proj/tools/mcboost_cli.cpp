// Command-line front end: run / sweep experiments, lower-bound simulations,
// potential table export and the invariant check suite.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "mcboost/harness/checks.hpp"
#include "mcboost/harness/config.hpp"
#include "mcboost/harness/dataset.hpp"
#include "mcboost/harness/runner.hpp"
#include "mcboost/potential.hpp"

namespace {

using namespace mcboost;
using namespace mcboost::harness;

int run_or_sweep(const std::string& config_path, const std::string& out_override) {
    ExperimentConfig cfg = parse_config_file(config_path);
    if (!out_override.empty()) cfg.out_dir = out_override;

    std::vector<RunResult> results;
    if (cfg.use_adversary) {
        results = run_experiment_adversary(cfg);
    } else {
        DatasetSpec spec;
        spec.path = cfg.dataset_path;
        spec.label_column = cfg.dataset_label_column;
        spec.missing = cfg.dataset_missing == "zero_fill" ? MissingPolicy::zero_fill : MissingPolicy::reject;
        const Dataset dataset = ingest_csv(spec);
        results = run_experiment(cfg, dataset);
    }
    emit_results(results, cfg.out_dir);

    bool any_partial = false;
    for (const auto& r : results) {
        std::printf("%-12s %-14s %-12s final20=%.4f total=%.4f %s\n", r.dataset.c_str(),
                    r.algorithm.c_str(), r.params.c_str(), r.final20_accuracy, r.total_accuracy,
                    r.partial ? ("PARTIAL: " + r.error).c_str() : "");
        any_partial = any_partial || r.partial;
    }
    std::printf("results written to %s\n", cfg.out_dir.string().c_str());
    return any_partial ? 1 : 0;
}

int run_simulate(const LowerBoundParams& params, const std::string& mode, const std::string& out_dir) {
    LowerBoundParams p = params;
    p.mode = mode == "two_phase" ? AdversaryMode::two_phase : AdversaryMode::constant_edge;
    const LowerBoundReport report = simulate_lower_bound(p);
    emit_simulation(p, report, out_dir);

    std::printf("exact loss rate (edge %.4g): %.6f\n", 2.0 * p.gamma, report.exact_loss_rate);
    std::printf("mean empirical loss rate:    %.6f (+- %.6f pooled se)\n", report.mean_loss_rate,
                report.pooled_stderr);
    std::printf("mean mistake rate:           %.6f\n", report.mean_mistake_rate);
    if (p.mode == AdversaryMode::two_phase) {
        std::printf("noise phase t0 = %lld rounds\n", static_cast<long long>(report.t0));
        for (std::size_t s = 0; s < report.phase1_mistakes.size(); ++s) {
            std::printf("  seed %zu: %lld mistakes in phase 1\n", s,
                        static_cast<long long>(report.phase1_mistakes[s]));
        }
    }
    std::printf("results written to %s\n", out_dir.c_str());
    return 0;
}

int run_potential_export(int k, double gamma, int max_i, const std::string& out_path) {
    const std::int64_t cells = DensePotentialTable::cell_count(k, max_i);
    if (cells > 50'000'000) {
        std::fprintf(stderr, "table too large (%lld cells); lower --max-i\n", static_cast<long long>(cells));
        return 2;
    }
    DensePotentialTable table(k, gamma, max_i);
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) {
            std::fprintf(stderr, "cannot write %s\n", out_path.c_str());
            return 3;
        }
        out = &file;
    }
    (*out) << "k,gamma,i";
    for (int j = 1; j < k; ++j) (*out) << ",gap" << j;
    (*out) << ",value\n";
    char buf[64];
    table.for_each_cell([&](int m, const std::vector<int>& gaps, double value) {
        (*out) << k << "," << gamma << "," << m;
        for (int g : gaps) (*out) << "," << g;
        std::snprintf(buf, sizeof(buf), "%.12g", value);
        (*out) << "," << buf << "\n";
    });
    return 0;
}

int run_checks(std::uint64_t seed) {
    const auto results = run_invariant_checks(seed);
    bool all = true;
    for (const auto& r : results) {
        std::printf("[%s] %-36s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
        all = all && r.pass;
    }
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"streaming multiclass boosting toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    auto* run = app.add_subcommand("run", "run the experiment described by a config file");
    run->add_option("--config", config_path, "key = value config file")->required();
    run->add_option("--out", out_dir, "output directory override");

    auto* sweep = app.add_subcommand("sweep", "run a gamma/N grid from a config file");
    sweep->add_option("--config", config_path, "key = value config file")->required();
    sweep->add_option("--out", out_dir, "output directory override");

    LowerBoundParams sim;
    std::string sim_mode = "constant_edge", sim_out = "results";
    auto* simulate = app.add_subcommand("simulate", "lower-bound adversary simulation");
    simulate->add_option("--k", sim.k, "number of classes");
    simulate->add_option("--gamma", sim.gamma, "edge parameter (oracles carry edge 2*gamma)");
    simulate->add_option("--excess-loss", sim.excess_loss, "excess loss S");
    simulate->add_option("--n-learners", sim.n_learners, "oracle coordinate count");
    simulate->add_option("--rounds", sim.rounds, "stream length per seed");
    simulate->add_option("--seeds", sim.n_seeds, "number of seeded repetitions");
    simulate->add_option("--master-seed", sim.master_seed, "master seed");
    simulate->add_option("--delta", sim.delta, "confidence parameter");
    simulate->add_option("--mode", sim_mode, "constant_edge | two_phase")
        ->check(CLI::IsMember({"constant_edge", "two_phase"}));
    simulate->add_option("--out", sim_out, "output directory");

    int pot_k = 3, pot_max_i = 10;
    double pot_gamma = 0.1;
    std::string pot_out;
    auto* potential = app.add_subcommand("potential", "export a potential table as CSV");
    potential->add_option("--k", pot_k, "number of classes")->required();
    potential->add_option("--gamma", pot_gamma, "edge parameter")->required();
    potential->add_option("--max-i", pot_max_i, "largest remaining-learner index")->required();
    potential->add_option("--out", pot_out, "output file (stdout when omitted)");

    std::uint64_t check_seed = 20240501;
    auto* chk = app.add_subcommand("check", "run the invariant suites");
    chk->add_option("--seed", check_seed, "randomization seed");

    try {
        app.parse(argc, argv);
        if (run->parsed() || sweep->parsed()) return run_or_sweep(config_path, out_dir);
        if (simulate->parsed()) return run_simulate(sim, sim_mode, sim_out);
        if (potential->parsed()) return run_potential_export(pot_k, pot_gamma, pot_max_i, pot_out);
        if (chk->parsed()) return run_checks(check_seed);
    } catch (const CLI::ParseError& e) {
        std::ofstream null;
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const mcboost::harness::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const mcboost::harness::DataError& e) {
        std::fprintf(stderr, "data error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
