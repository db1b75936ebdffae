#include "mcboost/weak_learner.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mcboost {

namespace detail {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("inverse_normal_cdf: p outside (0,1)");
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                               1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                               6.680131188771972e+01,  -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                               -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                               3.754408661907416e+00};
    const double p_low = 0.02425;
    double q, r, x;
    if (p < p_low) {
        q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        q = p - 0.5;
        r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    return x;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// OnlineStump
// ---------------------------------------------------------------------------

OnlineStump::OnlineStump(int k, StumpParams params) : k_(k), params_(params), class_mass_(k, 0.0) {
    if (k < 2) throw std::invalid_argument("OnlineStump: need k >= 2");
    if (params_.bins < 1 || params_.refresh_period < 1) {
        throw std::invalid_argument("OnlineStump: bins and refresh_period must be positive");
    }
}

int OnlineStump::predict(const Eigen::VectorXd& features) const {
    if (!rule_) return majority_;
    if (rule_->feature >= features.size()) throw std::invalid_argument("OnlineStump: feature dimension mismatch");
    return features[rule_->feature] < rule_->threshold ? rule_->left_label : rule_->right_label;
}

void OnlineStump::learn(const Eigen::VectorXd& features, int label, double weight) {
    if (label < 0 || label >= k_) throw std::invalid_argument("OnlineStump: label out of range");
    if (weight <= 0.0) return;
    if (dim_ < 0) {
        dim_ = static_cast<int>(features.size());
        stats_.assign(dim_, std::vector<FeatureClassStats>(k_));
    } else if (static_cast<int>(features.size()) != dim_) {
        throw std::invalid_argument("OnlineStump: feature dimension changed mid-stream");
    }
    for (int f = 0; f < dim_; ++f) stats_[f][label].add(features[f], weight);
    class_mass_[label] += weight;
    majority_ = argmax_label(Eigen::Map<const Eigen::VectorXd>(class_mass_.data(), k_));

    if (!thresholds_.empty()) {
        for (int f = 0; f < dim_; ++f) {
            const auto& edges = thresholds_[f];
            const int cell = static_cast<int>(
                std::upper_bound(edges.begin(), edges.end(), features[f]) - edges.begin());
            cell_counts_[f][static_cast<std::size_t>(cell) * k_ + label] += weight;
        }
        grid_class_mass_[label] += weight;
    }

    ++updates_;
    if (updates_ % params_.refresh_period == 0) {
        if (thresholds_.empty()) {
            build_grid();
        } else {
            refresh();
        }
    }
}

// Pooled Gaussian quantiles freeze the per-feature candidate thresholds.
void OnlineStump::build_grid() {
    double total = 0.0;
    for (double m : class_mass_) total += m;
    if (total <= 0.0) return;

    thresholds_.assign(dim_, std::vector<double>(params_.bins));
    cell_counts_.assign(dim_, std::vector<double>(static_cast<std::size_t>(params_.bins + 1) * k_, 0.0));
    grid_class_mass_.assign(k_, 0.0);

    for (int f = 0; f < dim_; ++f) {
        double pooled_mean = 0.0;
        for (int c = 0; c < k_; ++c) pooled_mean += stats_[f][c].weight * stats_[f][c].mean;
        pooled_mean /= total;
        double pooled_m2 = 0.0;
        for (int c = 0; c < k_; ++c) {
            const double dm = stats_[f][c].mean - pooled_mean;
            pooled_m2 += stats_[f][c].m2 + stats_[f][c].weight * dm * dm;
        }
        const double pooled_sd = std::sqrt(std::max(pooled_m2 / total, params_.var_floor));
        for (int b = 0; b < params_.bins; ++b) {
            const double z = detail::inverse_normal_cdf((b + 1.0) / (params_.bins + 1.0));
            thresholds_[f][b] = pooled_mean + pooled_sd * z;
        }
    }
}

// Re-choose the split from the exact weighted cell counts; keep the plain
// majority prediction when no candidate improves on it.
void OnlineStump::refresh() {
    double total = 0.0;
    int grid_majority = 0;
    for (int c = 0; c < k_; ++c) {
        total += grid_class_mass_[c];
        if (grid_class_mass_[c] > grid_class_mass_[grid_majority]) grid_majority = c;
    }
    if (total <= 0.0) return;
    const double majority_err = total - grid_class_mass_[grid_majority];

    double best_err = majority_err;
    std::optional<Rule> best;
    std::vector<double> left(k_);

    for (int f = 0; f < dim_; ++f) {
        std::fill(left.begin(), left.end(), 0.0);
        for (int b = 0; b < params_.bins; ++b) {
            for (int c = 0; c < k_; ++c) left[c] += cell_counts_[f][static_cast<std::size_t>(b) * k_ + c];

            double max_left = 0.0, max_right = 0.0;
            int left_label = 0, right_label = 0;
            for (int c = 0; c < k_; ++c) {
                const double right = grid_class_mass_[c] - left[c];
                if (left[c] > max_left) {
                    max_left = left[c];
                    left_label = c;
                }
                if (right > max_right) {
                    max_right = right;
                    right_label = c;
                }
            }
            const double err = total - max_left - max_right;
            if (err < best_err - 1e-12) {
                best_err = err;
                best = Rule{f, thresholds_[f][b], left_label, right_label};
            }
        }
    }
    rule_ = best;  // nullopt keeps the majority fallback
}

// ---------------------------------------------------------------------------
// OnlineNaiveBayes
// ---------------------------------------------------------------------------

OnlineNaiveBayes::OnlineNaiveBayes(int k, NaiveBayesParams params)
    : k_(k), params_(params), class_mass_(k, 0.0) {
    if (k < 2) throw std::invalid_argument("OnlineNaiveBayes: need k >= 2");
    if (params_.var_floor <= 0.0) throw std::invalid_argument("OnlineNaiveBayes: var_floor must be positive");
}

int OnlineNaiveBayes::predict(const Eigen::VectorXd& features) const {
    double total = 0.0;
    for (double m : class_mass_) total += m;

    Eigen::VectorXd score(k_);
    for (int c = 0; c < k_; ++c) {
        score[c] = std::log((class_mass_[c] + params_.prior_smoothing) /
                            (total + k_ * params_.prior_smoothing));
    }
    if (dim_ >= 0) {
        if (static_cast<int>(features.size()) != dim_) {
            throw std::invalid_argument("OnlineNaiveBayes: feature dimension mismatch");
        }
        for (int c = 0; c < k_; ++c) {
            if (class_mass_[c] <= 0.0) continue;
            for (int f = 0; f < dim_; ++f) {
                const auto& st = stats_[f][c];
                const double var = st.variance(params_.var_floor);
                const double d = features[f] - st.mean;
                score[c] += -0.5 * std::log(2.0 * M_PI * var) - d * d / (2.0 * var);
            }
        }
    }
    return argmax_label(score);
}

void OnlineNaiveBayes::learn(const Eigen::VectorXd& features, int label, double weight) {
    if (label < 0 || label >= k_) throw std::invalid_argument("OnlineNaiveBayes: label out of range");
    if (weight <= 0.0) return;
    if (dim_ < 0) {
        dim_ = static_cast<int>(features.size());
        stats_.assign(dim_, std::vector<FeatureClassStats>(k_));
    } else if (static_cast<int>(features.size()) != dim_) {
        throw std::invalid_argument("OnlineNaiveBayes: feature dimension changed mid-stream");
    }
    for (int f = 0; f < dim_; ++f) stats_[f][label].add(features[f], weight);
    class_mass_[label] += weight;
}

// ---------------------------------------------------------------------------
// EdgeOracleLearner
// ---------------------------------------------------------------------------

int EdgeOracleLearner::predict(const Eigen::VectorXd& features) const {
    if (coordinate_ < 0 || coordinate_ >= features.size()) {
        throw std::out_of_range("EdgeOracleLearner: coordinate outside feature vector");
    }
    return static_cast<int>(std::lround(features[coordinate_]));
}

}  // namespace mcboost
