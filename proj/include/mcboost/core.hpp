#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mcboost/rng.hpp"

namespace mcboost {

// Labels are 0-based indices throughout the library. All user-facing
// surfaces (CLI, CSV, JSONL logs, README) present 1-based labels.

struct LabelSpace {
    int k;

    explicit LabelSpace(int k_) : k(k_) {
        if (k < 2) throw std::invalid_argument("LabelSpace: k must be >= 2");
    }
};

// One stream element: fixed-dimension feature vector, label, importance
// weight in [0, 1].
struct Example {
    Eigen::VectorXd features;
    int label = 0;
    double weight = 1.0;
};

inline void validate_example(const Example& e, int k) {
    if (e.label < 0 || e.label >= k) throw std::invalid_argument("Example: label out of range");
    if (!(e.weight >= 0.0 && e.weight <= 1.0)) throw std::invalid_argument("Example: weight outside [0,1]");
}

// Cumulative (weighted) vote vector over the k labels.
using VoteVector = Eigen::VectorXd;

enum class CostKind {
    eor_normalized,  // zero diagonal, non-negative entries, unit (or zero) row L1 norm
    gradient,        // row r is the gradient of a proper loss at the current votes
};

struct CostMatrix {
    Eigen::MatrixXd entries;
    CostKind kind = CostKind::eor_normalized;

    int classes() const { return static_cast<int>(entries.rows()); }
};

// Smallest-index label attaining the maximum coordinate.
template <typename Derived>
int argmax_label(const Eigen::DenseBase<Derived>& s) {
    int best = 0;
    for (int l = 1; l < static_cast<int>(s.size()); ++l) {
        if (s[l] > s[best]) best = l;
    }
    return best;
}

struct CostMatrixReport {
    std::vector<std::pair<int, std::string>> row_violations;

    bool ok() const { return row_violations.empty(); }
    std::string to_string() const;
};

// Per-row check of the invariants of the matrix's declared kind.
// Throws std::invalid_argument on a non-square matrix.
CostMatrixReport validate_cost_matrix(const CostMatrix& c, double l1_tol = 1e-9);

// Uniform distribution over k labels with gamma extra mass on `favored`.
struct EdgeDistribution {
    int k;
    double gamma;
    int favored;

    EdgeDistribution(int k_, double gamma_, int favored_) : k(k_), gamma(gamma_), favored(favored_) {
        if (k < 2) throw std::invalid_argument("EdgeDistribution: k must be >= 2");
        if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("EdgeDistribution: gamma outside [0,1)");
        if (favored < 0 || favored >= k) throw std::invalid_argument("EdgeDistribution: favored label out of range");
    }

    double mass(int label) const {
        double base = (1.0 - gamma) / k;
        return label == favored ? base + gamma : base;
    }
};

int edge_distribution_sample(const EdgeDistribution& d, Rng& rng);

}  // namespace mcboost
