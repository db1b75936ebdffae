#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mcboost/harness/dataset.hpp"
#include "mcboost/harness/errors.hpp"

namespace mcboost::harness {

// Flat key = value configuration; repeated keys accumulate into the list
// fields (algorithm, gamma). Unknown keys are configuration errors.
struct ExperimentConfig {
    std::string name;
    std::vector<std::string> algorithms;  // single_weak | online_mbbm | adaboost_olm
    std::vector<int> n_learners_grid;     // repeated n_learners keys; defaults to {100}
    std::vector<double> gammas;           // online_mbbm sweep values
    std::string loss = "logistic";        // logistic | exponential | square_hinge
    std::string weak_learner = "stump";   // stump | naive_bayes | oracle
    std::uint64_t master_seed = 1;
    int reorderings = 0;                  // 0: 27 for <= 2000 rows, 9 above, 1 for adversary streams
    int best_of = 20;                     // single_weak pool size
    std::string scaling = "trivial_k";    // trivial_k | lemma_bound | running_max
    std::int64_t potential_cell_cap = 10'000'000;
    std::int64_t mc_samples = 256;
    int workers = 0;                      // 0: hardware concurrency

    // weak-learner hyperparameter ranges, randomized per learner instance
    int stump_bins_min = 16;
    int stump_bins_max = 48;
    int stump_refresh_min = 25;
    int stump_refresh_max = 100;

    // dataset source
    std::filesystem::path dataset_path;
    std::string dataset_label_column = "class";
    std::string dataset_missing = "reject";  // reject | zero_fill

    // adversary source (used when dataset_path is empty)
    bool use_adversary = false;
    int adversary_k = 3;
    double adversary_gamma = 0.1;
    std::string adversary_mode = "constant_edge";  // constant_edge | two_phase
    double adversary_excess_loss = 30.0;
    std::int64_t adversary_rounds = 10000;

    std::string audit_log;  // JSONL path prefix; empty disables
    std::filesystem::path out_dir = "results";

    int n_learners() const { return n_learners_grid.empty() ? 100 : n_learners_grid.front(); }

    void validate() const;  // throws ConfigError
};

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig parse_config_file(const std::filesystem::path& path);

}  // namespace mcboost::harness
