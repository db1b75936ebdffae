#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "mcboost/core.hpp"

namespace mcboost {

// Behavioral contract: per round the booster calls receive_cost_matrix,
// then predict (at most once), then learn after the true label is revealed.
// predict is const: learner state changes only in learn.
class WeakLearner {
public:
    virtual ~WeakLearner() = default;

    virtual void receive_cost_matrix(const CostMatrix& cost) { (void)cost; }
    virtual int predict(const Eigen::VectorXd& features) const = 0;
    virtual void learn(const Eigen::VectorXd& features, int label, double weight) = 0;
};

using LearnerFactory = std::function<std::unique_ptr<WeakLearner>(int learner_index, std::uint64_t seed)>;

// Weighted running moments of one feature under one class.
struct FeatureClassStats {
    double weight = 0.0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x, double w) {
        weight += w;
        const double delta = x - mean;
        mean += (w / weight) * delta;
        m2 += w * delta * (x - mean);
    }

    double variance(double floor_) const { return weight > 0.0 ? std::max(m2 / weight, floor_) : floor_; }
};

struct StumpParams {
    int bins = 32;             // candidate thresholds per feature
    int refresh_period = 50;   // updates between split re-evaluations
    double var_floor = 1e-6;
};

// Online decision stump. Weighted Gaussian moments per (feature, class)
// seed a fixed per-feature candidate-threshold grid (pooled quantiles,
// frozen at the first refresh); from then on exact weighted class counts
// accumulate per grid cell, and every refresh_period updates the
// (feature, threshold) split minimizing weighted 0-1 impurity is re-chosen,
// with a majority label on each side. Falls back to the plain majority
// class while no split beats it. All statistics are exactly linear in the
// importance weights.
class OnlineStump final : public WeakLearner {
public:
    OnlineStump(int k, StumpParams params = {});

    int predict(const Eigen::VectorXd& features) const override;
    void learn(const Eigen::VectorXd& features, int label, double weight) override;

    const FeatureClassStats& stats(int feature, int label) const { return stats_[feature][label]; }
    bool has_rule() const { return rule_.has_value(); }

private:
    void build_grid();
    void refresh();

    struct Rule {
        int feature;
        double threshold;
        int left_label;   // x[feature] < threshold
        int right_label;
    };

    int k_;
    StumpParams params_;
    int dim_ = -1;
    std::int64_t updates_ = 0;
    std::vector<std::vector<FeatureClassStats>> stats_;  // [feature][class]
    std::vector<double> class_mass_;
    int majority_ = 0;
    std::optional<Rule> rule_;

    // frozen candidate thresholds and the per-cell class counts behind them
    std::vector<std::vector<double>> thresholds_;       // [feature][bin]
    std::vector<std::vector<double>> cell_counts_;      // [feature][(bins+1) * k]
    std::vector<double> grid_class_mass_;               // class mass seen since the grid froze
};

struct NaiveBayesParams {
    double var_floor = 1e-6;
    double prior_smoothing = 1.0;  // Laplace smoothing on class priors
};

// Gaussian naive Bayes over a stream, importance-weighted.
class OnlineNaiveBayes final : public WeakLearner {
public:
    OnlineNaiveBayes(int k, NaiveBayesParams params = {});

    int predict(const Eigen::VectorXd& features) const override;
    void learn(const Eigen::VectorXd& features, int label, double weight) override;

    const FeatureClassStats& stats(int feature, int label) const { return stats_[feature][label]; }

private:
    int k_;
    NaiveBayesParams params_;
    int dim_ = -1;
    std::vector<std::vector<FeatureClassStats>> stats_;  // [feature][class]
    std::vector<double> class_mass_;
};

// Reads one coordinate of an adversary-generated feature vector; the
// coordinates are label-valued.
class EdgeOracleLearner final : public WeakLearner {
public:
    explicit EdgeOracleLearner(int coordinate) : coordinate_(coordinate) {}

    int predict(const Eigen::VectorXd& features) const override;
    void learn(const Eigen::VectorXd&, int, double) override {}

private:
    int coordinate_;
};

namespace detail {
// Inverse standard normal CDF (Acklam's rational approximation).
double inverse_normal_cdf(double p);
double normal_cdf(double z);
}  // namespace detail

}  // namespace mcboost
