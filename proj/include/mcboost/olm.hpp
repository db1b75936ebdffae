#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "mcboost/core.hpp"
#include "mcboost/online_opt.hpp"
#include "mcboost/weak_learner.hpp"

namespace mcboost {

enum class OlmLoss {
    logistic,
    exponential,
    square_hinge,
};

// Surrogate loss L^r(s) of the given variant.
double olm_loss(OlmLoss variant, int true_label, const VoteVector& s);

// Gradient-kind cost matrix: row r is the gradient of L^r at s.
CostMatrix olm_cost_matrix(OlmLoss variant, const VoteVector& s);

// Derivative of alpha -> L^{true_label}(s + alpha * e_{voted}).
double olm_gradient(OlmLoss variant, double alpha, const VoteVector& s, int voted, int true_label);

// Feasible interval half-width for the vote weights.
double olm_half_width(OlmLoss variant, int n_learners);

// Constant c in the step size eta_t = c / sqrt(t) for the 1-based learner index.
double olm_rate_constant(OlmLoss variant, int k, int learner_index, int n_learners);

// Divisor that maps -C[y,y] into a delivered weight; results are clipped
// into [0,1].
double olm_weight_normalizer(OlmLoss variant, int k, int learner_index, int n_learners);

struct OlmConfig {
    int k = 2;
    int n_learners = 1;
    OlmLoss loss = OlmLoss::logistic;
    std::uint64_t seed = 0;
};

struct OlmRoundRecord {
    std::int64_t t = 0;
    int true_label = -1;
    int predicted = -1;
    int chosen_expert = -1;          // i_t
    std::vector<int> learner_votes;  // l^i
    std::vector<int> expert_votes;   // yhat^i
    std::vector<double> alphas;      // alpha^i used this round
};

// Adaptive booster: per-learner vote weights fit by projected OGD on the
// surrogate loss, expert selection by Hedge, no weak learning assumption.
class OlmBooster {
public:
    OlmBooster(OlmConfig config, std::vector<std::unique_ptr<WeakLearner>> learners);

    int predict(const Eigen::VectorXd& features);
    void learn(int true_label);

    const OlmRoundRecord& last_record() const { return record_; }
    std::int64_t rounds() const { return rounds_; }
    const OlmConfig& config() const { return config_; }
    double alpha(int index) const { return ogd_[index].alpha; }
    const HedgeState& hedge() const { return hedge_; }

    // gamma_i = sum_t C^i[y_t, l^i_t] / sum_t C^i[y_t, y_t]; undefined when
    // the denominator is zero.
    std::vector<std::optional<double>> empirical_edges() const;

private:
    OlmConfig config_;
    std::vector<std::unique_ptr<WeakLearner>> learners_;
    std::vector<OgdState> ogd_;
    HedgeState hedge_;
    Rng rng_;

    bool round_open_ = false;
    std::int64_t rounds_ = 0;
    Eigen::VectorXd features_;
    std::vector<VoteVector> stages_;  // s^0 .. s^N for the open round
    OlmRoundRecord record_;

    std::vector<double> edge_numerator_;
    std::vector<double> edge_denominator_;
};

}  // namespace mcboost
