#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "mcboost/core.hpp"

namespace mcboost {

// Multiclass 0-1 loss on a vote vector: 1 iff some wrong label ties or beats
// the true one.
int zero_one_loss(int true_label, const VoteVector& s);
int zero_one_loss(int true_label, const Eigen::VectorXi& s);

class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// phi^r_i(s): expected final 0-1 loss when i votes remain, drawn i.i.d. from
// the edge-over-random distribution favoring r, starting from votes s.
struct PotentialQuery {
    int true_label = 0;      // r
    int remaining = 0;       // i
    Eigen::VectorXi votes;   // s
    double gamma = 0.0;

    int k() const { return static_cast<int>(votes.size()); }
    void validate() const;
};

namespace detail {

constexpr int kMaxGapSlots = 8;  // supports k <= 9 on the packed fast path
using GapArray = std::array<int, kMaxGapSlots>;

// Canonical state: gaps d_l = s[r] - s[l] over the non-favored labels,
// sorted ascending and clipped to [-(m+1), m+1]. Once |d_l| exceeds the
// remaining draws the outcome for that label is decided, so finer
// resolution carries no information.
GapArray canonical_gaps(int remaining, const Eigen::VectorXi& votes, int true_label);
void clip_sort_gaps(GapArray& gaps, int n_gaps, int remaining);

}  // namespace detail

// Lazily memoized recurrence evaluation. Safe for concurrent use: lookups
// and idempotent inserts happen under a mutex, computation outside it.
class PotentialTable {
public:
    static constexpr std::int64_t kDefaultCellCap = 10'000'000;

    PotentialTable(int k, double gamma, std::int64_t cell_cap = kDefaultCellCap);

    double value(const PotentialQuery& q) const;
    // Gaps need not be sorted or clipped.
    double value_gaps(int remaining, std::span<const int> gaps) const;

    int k() const { return k_; }
    double gamma() const { return gamma_; }
    std::int64_t size() const;
    std::int64_t cell_cap() const { return cell_cap_; }

private:
    double eval(int remaining, detail::GapArray gaps) const;

    int k_;
    double gamma_;
    std::int64_t cell_cap_;
    double p_favored_;
    double p_other_;

    mutable std::mutex mu_;
    mutable std::unordered_map<std::uint64_t, double> packed_memo_;
    mutable std::map<std::vector<int>, double> wide_memo_;  // k > 9 or remaining > 126
};

// Fully materialized per-level tables for hot loops (one cell per canonical
// state, direct indexing). Build cost and memory are proportional to
// cell_count(k, max_remaining); check feasibility against a cap before
// constructing.
class DensePotentialTable {
public:
    static std::int64_t cell_count(int k, int max_remaining);

    DensePotentialTable(int k, double gamma, int max_remaining);

    double value(const PotentialQuery& q) const;
    double value_gaps(int remaining, std::span<const int> gaps) const;

    int k() const { return k_; }
    double gamma() const { return gamma_; }
    int max_remaining() const { return max_remaining_; }

    // Visits every cell as (remaining, sorted gaps, value), level-major in
    // storage (= colex) order.
    template <typename Fn>
    void for_each_cell(Fn&& fn) const {
        std::vector<int> gaps(k_ - 1);
        for (int m = 0; m <= max_remaining_; ++m) {
            const int lo = -(m + 1);
            const int hi = m + 1;
            std::int64_t idx = 0;
            enumerate_sorted(gaps, k_ - 2, lo, hi, [&](const std::vector<int>& g) {
                fn(m, g, levels_[m][idx]);
                ++idx;
            });
        }
    }

private:
    // Colex enumeration of sorted gap tuples: the last coordinate is the
    // outermost loop, so the emission order equals the rank order.
    template <typename Fn>
    void enumerate_sorted(std::vector<int>& gaps, int pos, int lo, int hi, Fn&& fn) const {
        if (pos < 0) {
            fn(const_cast<const std::vector<int>&>(gaps));
            return;
        }
        for (int v = lo; v <= hi; ++v) {
            gaps[pos] = v;
            enumerate_sorted(gaps, pos - 1, lo, v, fn);
        }
    }

    std::int64_t rank(int remaining, const detail::GapArray& gaps) const;

    int k_;
    double gamma_;
    int max_remaining_;
    std::vector<std::vector<double>> levels_;
    std::vector<std::array<std::int64_t, detail::kMaxGapSlots + 1>> pascal_;
};

double potential_exact(const PotentialQuery& q, const PotentialTable& table);

struct McEstimate {
    double estimate = 0.0;
    double stderr_ = 0.0;
};

// Unbiased Monte Carlo estimate of phi: mean 0-1 loss over n_samples draw
// sequences. Deterministic under a fixed seed.
McEstimate potential_mc(const PotentialQuery& q, std::int64_t n_samples, std::uint64_t seed);

// Estimates phi^r_m(s+e_l) - phi^r_m(s+e_r) for every l with common random
// draws across the row (the per-draw difference is 0/1, so this is a low
// variance estimator). Used by the booster's Monte Carlo mode.
Eigen::VectorXd mc_row_differences(int true_label, int remaining, const Eigen::VectorXi& votes,
                                   double gamma, int k, std::int64_t n_samples, std::uint64_t seed);

// Direct evaluation via the multinomial sum: 1 minus the probability that
// the favored label strictly wins after `remaining` draws. Independent of
// the recurrence path; used as a cross-check oracle.
double potential_multinomial_sum(const PotentialQuery& q);

// (k-1) * exp(-gamma^2 * N / 2): closed-form bound on phi^1_N(0).
double asymptotic_error_bound(int k, double gamma, int n_learners);

// min(k, c * k^{5/2} / sqrt(N - i)); the trivial bound k when i == N.
double weight_norm_bound(int k, double gamma, int n_learners, int i, double c = 8.0);

}  // namespace mcboost
