#include "mcboost/online_opt.hpp"

#include <algorithm>

namespace mcboost {

namespace {

// Samples index i with probability proportional to exp(scores[i]),
// stabilized by subtracting the maximum score.
int sample_softmax(std::span<const double> scores, Rng& rng) {
    double max_score = *std::max_element(scores.begin(), scores.end());
    double total = 0.0;
    for (double s : scores) total += std::exp(s - max_score);
    double u = rng.uniform01() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        acc += std::exp(scores[i] - max_score);
        if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(scores.size()) - 1;
}

}  // namespace

int HedgeState::sample(Rng& rng) const {
    std::vector<double> scores(mistakes_.size());
    for (std::size_t i = 0; i < mistakes_.size(); ++i) scores[i] = -static_cast<double>(mistakes_[i]);
    return sample_softmax(scores, rng);
}

LeaState::LeaState(int n_experts, std::int64_t horizon) : horizon_(horizon) {
    if (n_experts < 1) throw std::invalid_argument("LeaState: need at least one expert");
    if (horizon < 1) throw std::invalid_argument("LeaState: need horizon >= 1");
    eta_ = std::sqrt(8.0 * std::log(static_cast<double>(n_experts)) / static_cast<double>(horizon));
    costs_ = Eigen::VectorXd::Zero(n_experts);
}

int LeaState::lea_round(std::span<const int> advice, double weight, const CostMatrix& cost, int true_label,
                        Rng& rng) {
    if (static_cast<int>(advice.size()) != n_experts()) {
        throw std::invalid_argument("LeaState: one advice entry per expert required");
    }
    if (round_ >= horizon_) throw std::logic_error("LeaState: called past the horizon");
    if (!(weight >= 0.0 && weight <= 1.0)) throw std::invalid_argument("LeaState: weight outside [0,1]");

    std::vector<double> scores(advice.size());
    for (std::size_t i = 0; i < advice.size(); ++i) scores[i] = -eta_ * costs_[static_cast<int>(i)];
    const int chosen = sample_softmax(scores, rng);
    const int prediction = advice[chosen];

    own_cost_ += weight * cost.entries(true_label, prediction);
    for (int i = 0; i < n_experts(); ++i) {
        costs_[i] += weight * cost.entries(true_label, advice[i]);
    }
    ++round_;
    return prediction;
}

}  // namespace mcboost
