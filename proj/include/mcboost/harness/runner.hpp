#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mcboost/adversary.hpp"
#include "mcboost/harness/config.hpp"
#include "mcboost/harness/dataset.hpp"

namespace mcboost::harness {

struct RunResult {
    std::string dataset;
    int k = 0;
    std::string algorithm;
    std::string params;  // e.g. "gamma=0.1"
    double total_accuracy = 0.0;
    double final20_accuracy = 0.0;
    double wall_seconds = 0.0;                // mean per reordering, excludes parsing
    std::vector<double> empirical_edges;      // adaboost_olm: per-learner means
    std::string fingerprint;
    bool partial = false;
    std::string error;
};

// Streams every example through predict-then-learn for each configured
// algorithm cell, averaged over seeded reorderings. Cells x reorderings run
// on a bounded worker pool.
std::vector<RunResult> run_experiment(const ExperimentConfig& config, const Dataset& dataset);

// Same protocol against the configured adversary stream (reorderings static,
// default 1; the stream is internally stochastic).
std::vector<RunResult> run_experiment_adversary(const ExperimentConfig& config);

// Writes results.csv and results.md (plus timings.csv for wall-clock data,
// which is kept out of results.csv so reruns are byte-identical).
void emit_results(const std::vector<RunResult>& rows, const std::filesystem::path& out_dir);

struct LowerBoundParams {
    int k = 3;
    double gamma = 0.1;  // the oracle coordinates carry edge 2*gamma
    double excess_loss = 30.0;
    int n_learners = 20;
    std::int64_t rounds = 100000;
    int n_seeds = 1;
    AdversaryMode mode = AdversaryMode::constant_edge;
    std::uint64_t master_seed = 1;
    double delta = 0.01;
};

struct LowerBoundReport {
    std::int64_t t0 = 0;                 // two_phase noise-phase length
    double exact_loss_rate = 0.0;        // DP value of phi^1_N(0) at edge 2*gamma
    double mean_loss_rate = 0.0;         // ties counted as losses
    double mean_mistake_rate = 0.0;      // majority-vote prediction != label
    double pooled_stderr = 0.0;
    std::vector<double> per_seed_loss_rate;
    std::vector<double> per_seed_mistake_rate;
    std::vector<std::int64_t> phase1_mistakes;  // two_phase only, one per seed
};

// Simple-majority voting over n_learners oracle coordinates; compares the
// empirical 0-1 loss rate against the DP-exact potential value, and in
// two_phase mode counts the mistakes forced during the noise phase.
LowerBoundReport simulate_lower_bound(const LowerBoundParams& params);

void emit_simulation(const LowerBoundParams& params, const LowerBoundReport& report,
                     const std::filesystem::path& out_dir);

}  // namespace mcboost::harness
