#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <memory>
#include <vector>

#include "mcboost/core.hpp"
#include "mcboost/potential.hpp"
#include "mcboost/weak_learner.hpp"

namespace mcboost {

enum class WeightScaling {
    trivial_k,    // divide by k (potentials live in [0,1], k summands)
    lemma_bound,  // divide by weight_norm_bound(k, gamma, N, i)
    running_max,  // divide by the largest raw weight seen so far
};

enum class PotentialMode {
    exact,        // dense DP table
    monte_carlo,  // seeded per (round, learner, row)
};

struct MbbmConfig {
    int k = 2;
    int n_learners = 1;
    double gamma = 0.1;  // assumed edge; required, gamma = 0 is rejected
    WeightScaling scaling = WeightScaling::trivial_k;
    double bound_constant = 8.0;  // constant in the refined weight bound
    std::int64_t potential_cell_cap = PotentialTable::kDefaultCellCap;
    std::int64_t mc_samples = 256;
    std::uint64_t seed = 0;
};

struct MbbmRoundRecord {
    std::int64_t t = 0;
    int true_label = -1;
    int predicted = -1;
    std::vector<int> learner_votes;      // l^i
    std::vector<double> raw_weights;     // w^i[t], filled during learn
    std::vector<double> scaled_weights;  // as delivered, in [0,1]
    PotentialMode mode = PotentialMode::exact;
};

// Optimal booster: potential-derived normalized cost matrices, simple
// majority voting (all vote weights fixed at 1), weighted feedback.
class MbbmBooster {
public:
    // A prebuilt table (same k/gamma, depth >= N-1) can be shared across
    // boosters, e.g. the reorderings of one sweep cell. Without one the
    // booster builds its own when the cell cap allows, otherwise it runs
    // in Monte Carlo mode.
    MbbmBooster(MbbmConfig config, std::vector<std::unique_ptr<WeakLearner>> learners,
                std::shared_ptr<const DensePotentialTable> shared_table = nullptr);

    int predict(const Eigen::VectorXd& features);
    void learn(int true_label);

    // Normalized cost matrix for the learner at 0-based `index` given the
    // cumulative votes of the learners before it.
    CostMatrix cost_matrix(int index, const Eigen::VectorXi& votes) const;

    PotentialMode potential_mode() const { return mode_; }
    const MbbmRoundRecord& last_record() const { return record_; }
    std::int64_t rounds() const { return rounds_; }
    const MbbmConfig& config() const { return config_; }

private:
    Eigen::VectorXd row_weight_sums(int index, const Eigen::VectorXi& votes, Eigen::MatrixXd& entries) const;

    MbbmConfig config_;
    std::vector<std::unique_ptr<WeakLearner>> learners_;
    std::shared_ptr<const DensePotentialTable> table_;
    PotentialMode mode_ = PotentialMode::exact;

    bool round_open_ = false;
    std::int64_t rounds_ = 0;
    Eigen::VectorXd features_;
    Eigen::MatrixXd round_row_sums_;  // (learner, row) -> unnormalized row weight
    MbbmRoundRecord record_;
    std::vector<double> running_max_;
};

}  // namespace mcboost
