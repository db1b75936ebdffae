#include "mcboost/mbbm.hpp"

#include <array>
#include <cmath>
#include <span>
#include <sstream>
#include <stdexcept>

#include "mcboost/rng.hpp"

namespace mcboost {

MbbmBooster::MbbmBooster(MbbmConfig config, std::vector<std::unique_ptr<WeakLearner>> learners,
                         std::shared_ptr<const DensePotentialTable> shared_table)
    : config_(config), learners_(std::move(learners)) {
    if (config_.k < 2) throw std::invalid_argument("MbbmBooster: need k >= 2");
    if (!(config_.gamma > 0.0 && config_.gamma < 0.5)) {
        throw std::invalid_argument("MbbmBooster: gamma must lie in (0, 1/2)");
    }
    if (static_cast<int>(learners_.size()) != config_.n_learners || config_.n_learners < 1) {
        throw std::invalid_argument("MbbmBooster: learner count must match n_learners >= 1");
    }
    if (config_.mc_samples < 1) throw std::invalid_argument("MbbmBooster: mc_samples must be positive");

    if (shared_table) {
        if (shared_table->k() != config_.k || shared_table->gamma() != config_.gamma ||
            shared_table->max_remaining() < config_.n_learners - 1) {
            throw std::invalid_argument("MbbmBooster: shared table does not cover this configuration");
        }
        table_ = std::move(shared_table);
        mode_ = PotentialMode::exact;
    } else if (DensePotentialTable::cell_count(config_.k, config_.n_learners - 1) <= config_.potential_cell_cap) {
        table_ = std::make_shared<const DensePotentialTable>(config_.k, config_.gamma, config_.n_learners - 1);
        mode_ = PotentialMode::exact;
    } else {
        mode_ = PotentialMode::monte_carlo;
    }
    running_max_.assign(config_.n_learners, 0.0);
    round_row_sums_.resize(config_.n_learners, config_.k);
}

Eigen::VectorXd MbbmBooster::row_weight_sums(int index, const Eigen::VectorXi& votes,
                                             Eigen::MatrixXd& entries) const {
    const int k = config_.k;
    const int m = config_.n_learners - index - 1;  // learner votes still to come
    Eigen::VectorXd sums(k);

    for (int r = 0; r < k; ++r) {
        Eigen::VectorXd diffs;
        if (mode_ == PotentialMode::exact) {
            std::array<int, detail::kMaxGapSlots> base{};
            std::array<int, detail::kMaxGapSlots> shifted{};
            int n = 0;
            for (int l = 0; l < k; ++l) {
                if (l != r) base[n++] = votes[r] - votes[l];
            }
            // adding e_r raises every gap by one; adding e_l lowers gap l only
            diffs = Eigen::VectorXd::Zero(k);
            for (int j = 0; j < k - 1; ++j) shifted[j] = base[j] + 1;
            const double phi_r = table_->value_gaps(m, std::span<const int>(shifted.data(), k - 1));
            int pos = 0;
            for (int l = 0; l < k; ++l) {
                if (l == r) continue;
                shifted = base;
                shifted[pos] -= 1;
                diffs[l] = std::max(
                    table_->value_gaps(m, std::span<const int>(shifted.data(), k - 1)) - phi_r, 0.0);
                ++pos;
            }
        } else {
            const std::uint64_t row_seed =
                derive_seed(config_.seed, {static_cast<std::uint64_t>(rounds_ + 1),
                                           static_cast<std::uint64_t>(index), static_cast<std::uint64_t>(r)});
            diffs = mc_row_differences(r, m, votes, config_.gamma, k, config_.mc_samples, row_seed);
            diffs = diffs.cwiseMax(0.0);
        }

        const double row_sum = diffs.sum();
        sums[r] = row_sum;
        if (row_sum > 0.0) {
            entries.row(r) = diffs.transpose() / row_sum;
        } else {
            entries.row(r).setZero();  // zero rows stay zero vectors
        }
        entries(r, r) = 0.0;
    }
    return sums;
}

CostMatrix MbbmBooster::cost_matrix(int index, const Eigen::VectorXi& votes) const {
    if (index < 0 || index >= config_.n_learners) throw std::invalid_argument("MbbmBooster: learner index out of range");
    if (votes.size() != config_.k) throw std::invalid_argument("MbbmBooster: vote vector has wrong length");
    if (votes.sum() != index) throw std::invalid_argument("MbbmBooster: ||votes||_1 must equal the learner index");
    CostMatrix c;
    c.kind = CostKind::eor_normalized;
    c.entries.resize(config_.k, config_.k);
    Eigen::MatrixXd& entries = c.entries;
    (void)row_weight_sums(index, votes, entries);
    return c;
}

int MbbmBooster::predict(const Eigen::VectorXd& features) {
    if (round_open_) throw std::logic_error("MbbmBooster: round already open");
    features_ = features;
    record_ = MbbmRoundRecord{};
    record_.t = rounds_ + 1;
    record_.mode = mode_;
    record_.learner_votes.reserve(config_.n_learners);

    Eigen::VectorXi votes = Eigen::VectorXi::Zero(config_.k);
    CostMatrix c;
    c.kind = CostKind::eor_normalized;
    c.entries.resize(config_.k, config_.k);

    for (int i = 0; i < config_.n_learners; ++i) {
        round_row_sums_.row(i) = row_weight_sums(i, votes, c.entries).transpose();
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
        votes[vote] += 1;
    }

    record_.predicted = argmax_label(votes);
    round_open_ = true;
    return record_.predicted;
}

void MbbmBooster::learn(int true_label) {
    if (!round_open_) throw std::logic_error("MbbmBooster: no open round");
    if (true_label < 0 || true_label >= config_.k) throw std::invalid_argument("MbbmBooster: label out of range");

    record_.true_label = true_label;
    record_.raw_weights.resize(config_.n_learners);
    record_.scaled_weights.resize(config_.n_learners);

    for (int i = 0; i < config_.n_learners; ++i) {
        const double raw = round_row_sums_(i, true_label);
        double divisor;
        switch (config_.scaling) {
            case WeightScaling::trivial_k:
                divisor = static_cast<double>(config_.k);
                break;
            case WeightScaling::lemma_bound:
                divisor = weight_norm_bound(config_.k, config_.gamma, config_.n_learners, i + 1,
                                            config_.bound_constant);
                break;
            case WeightScaling::running_max:
                running_max_[i] = std::max(running_max_[i], raw);
                divisor = running_max_[i];
                break;
        }
        const double scaled = divisor > 0.0 ? std::clamp(raw / divisor, 0.0, 1.0) : 0.0;
        record_.raw_weights[i] = raw;
        record_.scaled_weights[i] = scaled;
        try {
            learners_[i]->learn(features_, true_label, scaled);
        } catch (const std::exception& e) {
            std::ostringstream os;
            os << "weak learner " << (i + 1) << " failed: " << e.what();
            throw std::runtime_error(os.str());
        }
    }

    ++rounds_;
    round_open_ = false;
}

}  // namespace mcboost
