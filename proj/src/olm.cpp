#include "mcboost/olm.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mcboost {

namespace {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }
inline double hinge(double x) { return x > 0.0 ? x : 0.0; }

// Off-diagonal cost entry as a function of the vote difference s[l] - s[r].
inline double cost_entry(OlmLoss variant, double diff) {
    switch (variant) {
        case OlmLoss::logistic:
            return sigmoid(diff);
        case OlmLoss::exponential:
            return std::exp(diff);
        case OlmLoss::square_hinge:
            return hinge(diff + 1.0);
    }
    return 0.0;
}

}  // namespace

double olm_loss(OlmLoss variant, int true_label, const VoteVector& s) {
    const int k = static_cast<int>(s.size());
    if (true_label < 0 || true_label >= k) throw std::invalid_argument("olm_loss: label out of range");
    double loss = 0.0;
    for (int l = 0; l < k; ++l) {
        if (l == true_label) continue;
        const double diff = s[l] - s[true_label];
        switch (variant) {
            case OlmLoss::logistic:
                loss += std::log1p(std::exp(diff));
                break;
            case OlmLoss::exponential:
                loss += std::exp(diff);
                break;
            case OlmLoss::square_hinge: {
                const double h = hinge(diff + 1.0);
                loss += 0.5 * h * h;
                break;
            }
        }
    }
    return loss;
}

CostMatrix olm_cost_matrix(OlmLoss variant, const VoteVector& s) {
    const int k = static_cast<int>(s.size());
    CostMatrix c;
    c.kind = CostKind::gradient;
    c.entries.resize(k, k);
    for (int r = 0; r < k; ++r) {
        double diag = 0.0;
        for (int l = 0; l < k; ++l) {
            if (l == r) continue;
            const double entry = cost_entry(variant, s[l] - s[r]);
            c.entries(r, l) = entry;
            diag -= entry;
        }
        c.entries(r, r) = diag;
    }
    return c;
}

double olm_gradient(OlmLoss variant, double alpha, const VoteVector& s, int voted, int true_label) {
    const int k = static_cast<int>(s.size());
    if (voted < 0 || voted >= k || true_label < 0 || true_label >= k) {
        throw std::invalid_argument("olm_gradient: label out of range");
    }
    if (voted != true_label) {
        const double diff = s[voted] + alpha - s[true_label];
        switch (variant) {
            case OlmLoss::logistic:
                return sigmoid(diff);
            case OlmLoss::exponential:
                return std::exp(diff);
            case OlmLoss::square_hinge:
                return hinge(diff + 1.0);
        }
    }
    double grad = 0.0;
    for (int j = 0; j < k; ++j) {
        if (j == true_label) continue;
        const double diff = s[j] - s[true_label] - alpha;
        switch (variant) {
            case OlmLoss::logistic:
                grad -= sigmoid(diff);
                break;
            case OlmLoss::exponential:
                grad -= std::exp(diff);
                break;
            case OlmLoss::square_hinge:
                grad -= hinge(diff + 1.0);
                break;
        }
    }
    return grad;
}

double olm_half_width(OlmLoss variant, int n_learners) {
    if (variant == OlmLoss::square_hinge) return 1.0 / std::sqrt(static_cast<double>(n_learners));
    return 2.0;
}

double olm_rate_constant(OlmLoss variant, int k, int learner_index, int n_learners) {
    const double base = 2.0 * std::sqrt(2.0) / (k - 1);
    switch (variant) {
        case OlmLoss::logistic:
            return base;
        case OlmLoss::exponential:
            return base * std::exp(-static_cast<double>(learner_index));
        case OlmLoss::square_hinge: {
            const double c = olm_half_width(variant, n_learners);
            return std::sqrt(2.0) * c / ((k - 1) + c * n_learners);
        }
    }
    return base;
}

double olm_weight_normalizer(OlmLoss variant, int k, int learner_index, int n_learners) {
    switch (variant) {
        case OlmLoss::logistic:
            return static_cast<double>(k - 1);
        case OlmLoss::exponential:
            return (k - 1) * std::exp(2.0 * learner_index);
        case OlmLoss::square_hinge: {
            const double c = olm_half_width(variant, n_learners);
            return (k - 1) * (1.0 + 2.0 * c * learner_index);
        }
    }
    return static_cast<double>(k - 1);
}

OlmBooster::OlmBooster(OlmConfig config, std::vector<std::unique_ptr<WeakLearner>> learners)
    : config_(config),
      learners_(std::move(learners)),
      hedge_(config.n_learners),
      rng_(config.seed) {
    if (config_.k < 2) throw std::invalid_argument("OlmBooster: need k >= 2");
    if (static_cast<int>(learners_.size()) != config_.n_learners || config_.n_learners < 1) {
        throw std::invalid_argument("OlmBooster: learner count must match n_learners >= 1");
    }
    ogd_.reserve(config_.n_learners);
    for (int i = 0; i < config_.n_learners; ++i) {
        OgdState state;
        state.alpha = 0.0;
        state.half_width = olm_half_width(config_.loss, config_.n_learners);
        state.rate_c = olm_rate_constant(config_.loss, config_.k, i + 1, config_.n_learners);
        ogd_.push_back(state);
    }
    stages_.assign(config_.n_learners + 1, VoteVector::Zero(config_.k));
    edge_numerator_.assign(config_.n_learners, 0.0);
    edge_denominator_.assign(config_.n_learners, 0.0);
}

int OlmBooster::predict(const Eigen::VectorXd& features) {
    if (round_open_) throw std::logic_error("OlmBooster: round already open");
    features_ = features;
    record_ = OlmRoundRecord{};
    record_.t = rounds_ + 1;
    record_.learner_votes.reserve(config_.n_learners);
    record_.expert_votes.reserve(config_.n_learners);
    record_.alphas.reserve(config_.n_learners);

    stages_[0].setZero();
    for (int i = 0; i < config_.n_learners; ++i) {
        const CostMatrix c = olm_cost_matrix(config_.loss, stages_[i]);
        int vote;
        try {
            learners_[i]->receive_cost_matrix(c);
            vote = learners_[i]->predict(features);
        } catch (const std::exception& e) {
            std::ostringstream os;
            os << "weak learner " << (i + 1) << " failed: " << e.what();
            throw std::runtime_error(os.str());
        }
        if (vote < 0 || vote >= config_.k) {
            std::ostringstream os;
            os << "weak learner " << (i + 1) << " predicted label outside [1, k]";
            throw std::runtime_error(os.str());
        }
        record_.learner_votes.push_back(vote);
        record_.alphas.push_back(ogd_[i].alpha);
        stages_[i + 1] = stages_[i];
        stages_[i + 1][vote] += ogd_[i].alpha;
        record_.expert_votes.push_back(argmax_label(stages_[i + 1]));
    }

    record_.chosen_expert = hedge_.sample(rng_);
    record_.predicted = record_.expert_votes[record_.chosen_expert];
    round_open_ = true;
    return record_.predicted;
}

void OlmBooster::learn(int true_label) {
    if (!round_open_) throw std::logic_error("OlmBooster: no open round");
    if (true_label < 0 || true_label >= config_.k) throw std::invalid_argument("OlmBooster: label out of range");
    record_.true_label = true_label;

    std::vector<char> erred(config_.n_learners);
    for (int i = 0; i < config_.n_learners; ++i) {
        const VoteVector& s = stages_[i];
        const int vote = record_.learner_votes[i];

        const double gradient = olm_gradient(config_.loss, ogd_[i].alpha, s, vote, true_label);
        ogd_[i] = ogd_step(ogd_[i], gradient);

        double neg_diag = 0.0;  // -C^i[y, y]
        for (int j = 0; j < config_.k; ++j) {
            if (j != true_label) neg_diag += cost_entry(config_.loss, s[j] - s[true_label]);
        }
        const double cost_of_vote =
            vote == true_label ? -neg_diag : cost_entry(config_.loss, s[vote] - s[true_label]);
        edge_numerator_[i] += cost_of_vote;
        edge_denominator_[i] += -neg_diag;

        const double normalizer = olm_weight_normalizer(config_.loss, config_.k, i + 1, config_.n_learners);
        const double weight = std::clamp(neg_diag / normalizer, 0.0, 1.0);
        try {
            learners_[i]->learn(features_, true_label, weight);
        } catch (const std::exception& e) {
            std::ostringstream os;
            os << "weak learner " << (i + 1) << " failed: " << e.what();
            throw std::runtime_error(os.str());
        }
        erred[i] = record_.expert_votes[i] != true_label ? 1 : 0;
    }

    hedge_.update(erred);
    ++rounds_;
    round_open_ = false;
}

std::vector<std::optional<double>> OlmBooster::empirical_edges() const {
    std::vector<std::optional<double>> edges(config_.n_learners);
    for (int i = 0; i < config_.n_learners; ++i) {
        if (edge_denominator_[i] != 0.0) {
            edges[i] = edge_numerator_[i] / edge_denominator_[i];
        }
    }
    return edges;
}

}  // namespace mcboost
