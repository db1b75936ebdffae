#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "mcboost/core.hpp"
#include "mcboost/rng.hpp"

namespace mcboost {

// Projected online gradient descent on [-c, c] with rate eta_t = rate_c / sqrt(t).
struct OgdState {
    double alpha = 0.0;
    std::int64_t t = 1;
    double half_width = 2.0;
    double rate_c = 1.0;
};

inline OgdState ogd_step(const OgdState& state, double gradient) {
    if (!std::isfinite(gradient)) throw std::invalid_argument("ogd_step: non-finite gradient");
    const double eta = state.rate_c / std::sqrt(static_cast<double>(state.t));
    OgdState next = state;
    next.alpha = std::clamp(state.alpha - eta * gradient, -state.half_width, state.half_width);
    next.t = state.t + 1;
    return next;
}

// Hedge over N experts with unit learning rate: weight of expert i is
// exactly exp(-mistakes_i). Stored as mistake counts so weights survive
// arbitrarily long streams.
class HedgeState {
public:
    explicit HedgeState(int n_experts) : mistakes_(n_experts, 0) {
        if (n_experts < 1) throw std::invalid_argument("HedgeState: need at least one expert");
    }

    int n_experts() const { return static_cast<int>(mistakes_.size()); }
    std::int64_t mistakes(int i) const { return mistakes_[i]; }
    double log_weight(int i) const { return -static_cast<double>(mistakes_[i]); }

    // P(i) proportional to exp(-mistakes_i).
    int sample(Rng& rng) const;

    void update(std::span<const char> erred) {
        if (static_cast<int>(erred.size()) != n_experts()) {
            throw std::invalid_argument("HedgeState: one flag per expert required");
        }
        for (int i = 0; i < n_experts(); ++i) {
            if (erred[i]) ++mistakes_[i];
        }
    }

private:
    std::vector<std::int64_t> mistakes_;
};

// Learning with Expert Advice over a fixed horizon: follow expert i with
// probability proportional to exp(-eta * C_i), eta = sqrt(8 ln N / T).
class LeaState {
public:
    LeaState(int n_experts, std::int64_t horizon);

    int n_experts() const { return static_cast<int>(costs_.size()); }
    std::int64_t horizon() const { return horizon_; }
    std::int64_t round() const { return round_; }
    double eta() const { return eta_; }
    const Eigen::VectorXd& cumulative_costs() const { return costs_; }
    double own_cost() const { return own_cost_; }

    // Samples an expert, returns its advice, then charges every expert
    // w * cost[y, advice_i]. Throws once the horizon is exhausted.
    int lea_round(std::span<const int> advice, double weight, const CostMatrix& cost, int true_label, Rng& rng);

private:
    std::int64_t horizon_;
    std::int64_t round_ = 0;
    double eta_;
    Eigen::VectorXd costs_;
    double own_cost_ = 0.0;
};

// Horizon-free wrapper: restarts LEA with a doubled horizon when the
// current one runs out.
class DoublingLea {
public:
    DoublingLea(int n_experts, std::int64_t initial_horizon = 16)
        : n_experts_(n_experts), inner_(n_experts, initial_horizon) {}

    int lea_round(std::span<const int> advice, double weight, const CostMatrix& cost, int true_label, Rng& rng) {
        if (inner_.round() == inner_.horizon()) {
            inner_ = LeaState(n_experts_, inner_.horizon() * 2);
        }
        return inner_.lea_round(advice, weight, cost, true_label, rng);
    }

    const LeaState& current() const { return inner_; }

private:
    int n_experts_;
    LeaState inner_;
};

}  // namespace mcboost
