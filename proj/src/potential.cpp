#include "mcboost/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mcboost {

int zero_one_loss(int true_label, const VoteVector& s) {
    double best_other = -std::numeric_limits<double>::infinity();
    for (int l = 0; l < static_cast<int>(s.size()); ++l) {
        if (l != true_label) best_other = std::max(best_other, s[l]);
    }
    return best_other >= s[true_label] ? 1 : 0;
}

int zero_one_loss(int true_label, const Eigen::VectorXi& s) {
    int best_other = std::numeric_limits<int>::min();
    for (int l = 0; l < static_cast<int>(s.size()); ++l) {
        if (l != true_label) best_other = std::max(best_other, s[l]);
    }
    return best_other >= s[true_label] ? 1 : 0;
}

void PotentialQuery::validate() const {
    if (k() < 2) throw std::invalid_argument("PotentialQuery: need k >= 2");
    if (true_label < 0 || true_label >= k()) throw std::invalid_argument("PotentialQuery: true_label out of range");
    if (remaining < 0) throw std::invalid_argument("PotentialQuery: remaining must be >= 0");
    if (!(gamma >= 0.0 && gamma < 0.5)) throw std::invalid_argument("PotentialQuery: gamma outside [0, 0.5)");
}

namespace detail {

void clip_sort_gaps(GapArray& gaps, int n_gaps, int remaining) {
    const int bound = remaining + 1;
    for (int j = 0; j < n_gaps; ++j) {
        gaps[j] = std::clamp(gaps[j], -bound, bound);
    }
    std::sort(gaps.begin(), gaps.begin() + n_gaps);
}

GapArray canonical_gaps(int remaining, const Eigen::VectorXi& votes, int true_label) {
    GapArray gaps{};
    int n = 0;
    for (int l = 0; l < static_cast<int>(votes.size()); ++l) {
        if (l == true_label) continue;
        gaps[n++] = votes[true_label] - votes[l];
    }
    clip_sort_gaps(gaps, n, remaining);
    return gaps;
}

// Children of a level-m state live at level m-1 and are clipped to
// [-m, m]; callers pass clip_bound = m (the parent's remaining count).

GapArray child_favored(const GapArray& gaps, int n_gaps, int clip_bound) {
    GapArray c = gaps;
    for (int j = 0; j < n_gaps; ++j) c[j] = std::min(c[j] + 1, clip_bound);
    return c;
}

GapArray child_other(const GapArray& gaps, int n_gaps, int which, int clip_bound) {
    GapArray c = gaps;
    c[which] -= 1;
    for (int j = 0; j < n_gaps; ++j) c[j] = std::clamp(c[j], -clip_bound, clip_bound);
    // only position `which` decreased; restore order by bubbling it left
    for (int j = which; j > 0 && c[j] < c[j - 1]; --j) std::swap(c[j], c[j - 1]);
    return c;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// PotentialTable (lazy memoized recurrence)
// ---------------------------------------------------------------------------

PotentialTable::PotentialTable(int k, double gamma, std::int64_t cell_cap)
    : k_(k), gamma_(gamma), cell_cap_(cell_cap) {
    if (k < 2) throw std::invalid_argument("PotentialTable: need k >= 2");
    if (!(gamma >= 0.0 && gamma < 0.5)) throw std::invalid_argument("PotentialTable: gamma outside [0, 0.5)");
    p_favored_ = (1.0 - gamma) / k + gamma;
    p_other_ = (1.0 - gamma) / k;
}

std::int64_t PotentialTable::size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return static_cast<std::int64_t>(packed_memo_.size() + wide_memo_.size());
}

namespace {

// remaining in byte 0, biased gaps in bytes 1..7; valid while remaining
// stays <= 126 (so clipped gaps fit in a byte) and there are at most 7 gaps.
inline std::uint64_t pack_key(int remaining, const mcboost::detail::GapArray& gaps, int n_gaps) {
    std::uint64_t key = static_cast<std::uint64_t>(remaining);
    for (int j = 0; j < n_gaps; ++j) {
        key |= static_cast<std::uint64_t>(gaps[j] + 128) << (8 * (j + 1));
    }
    return key;
}

}  // namespace

double PotentialTable::eval(int remaining, detail::GapArray gaps) const {
    const int n_gaps = k_ - 1;
    if (remaining == 0) {
        return gaps[0] <= 0 ? 1.0 : 0.0;  // sorted: gaps[0] is the min gap
    }

    const bool packed = n_gaps <= 7 && remaining <= 126;
    std::uint64_t key = 0;
    std::vector<int> wide_key;
    if (packed) {
        key = pack_key(remaining, gaps, n_gaps);
        std::lock_guard<std::mutex> lock(mu_);
        auto it = packed_memo_.find(key);
        if (it != packed_memo_.end()) return it->second;
    } else {
        wide_key.assign(gaps.begin(), gaps.begin() + n_gaps);
        wide_key.push_back(remaining);
        std::lock_guard<std::mutex> lock(mu_);
        auto it = wide_memo_.find(wide_key);
        if (it != wide_memo_.end()) return it->second;
    }

    double v = p_favored_ * eval(remaining - 1, detail::child_favored(gaps, n_gaps, remaining));
    for (int j = 0; j < n_gaps; ++j) {
        v += p_other_ * eval(remaining - 1, detail::child_other(gaps, n_gaps, j, remaining));
    }

    {
        std::lock_guard<std::mutex> lock(mu_);
        if (static_cast<std::int64_t>(packed_memo_.size() + wide_memo_.size()) >= cell_cap_) {
            throw ResourceLimitError("PotentialTable: cell cap exceeded");
        }
        if (packed) {
            packed_memo_.emplace(key, v);
        } else {
            wide_memo_.emplace(std::move(wide_key), v);
        }
    }
    return v;
}

double PotentialTable::value(const PotentialQuery& q) const {
    q.validate();
    if (q.k() != k_) throw std::invalid_argument("PotentialTable: query k mismatch");
    if (q.gamma != gamma_) throw std::invalid_argument("PotentialTable: query gamma mismatch");
    return eval(q.remaining, detail::canonical_gaps(q.remaining, q.votes, q.true_label));
}

double PotentialTable::value_gaps(int remaining, std::span<const int> gaps) const {
    if (static_cast<int>(gaps.size()) != k_ - 1) {
        throw std::invalid_argument("PotentialTable: wrong gap count");
    }
    detail::GapArray g{};
    std::copy(gaps.begin(), gaps.end(), g.begin());
    detail::clip_sort_gaps(g, k_ - 1, remaining);
    return eval(remaining, g);
}

double potential_exact(const PotentialQuery& q, const PotentialTable& table) {
    return table.value(q);
}

// ---------------------------------------------------------------------------
// DensePotentialTable
// ---------------------------------------------------------------------------

std::int64_t DensePotentialTable::cell_count(int k, int max_remaining) {
    if (k < 2) throw std::invalid_argument("cell_count: need k >= 2");
    if (k - 1 > detail::kMaxGapSlots) return std::numeric_limits<std::int64_t>::max();
    double total = 0.0;
    for (int m = 0; m <= max_remaining; ++m) {
        // multisets of size k-1 over an alphabet of 2m+3 gap values
        double cells = 1.0;
        for (int j = 0; j < k - 1; ++j) cells = cells * (2 * m + 3 + j) / (j + 1);
        total += cells;
        if (total > 9.0e17) return std::numeric_limits<std::int64_t>::max();
    }
    return static_cast<std::int64_t>(total);
}

DensePotentialTable::DensePotentialTable(int k, double gamma, int max_remaining)
    : k_(k), gamma_(gamma), max_remaining_(max_remaining) {
    if (k < 2 || k - 1 > detail::kMaxGapSlots) {
        throw std::invalid_argument("DensePotentialTable: supports 2 <= k <= 9");
    }
    if (!(gamma >= 0.0 && gamma < 0.5)) throw std::invalid_argument("DensePotentialTable: gamma outside [0, 0.5)");
    if (max_remaining < 0) throw std::invalid_argument("DensePotentialTable: max_remaining must be >= 0");

    const int K = k_ - 1;
    const int n_max = 2 * max_remaining + 3 + K + 1;
    pascal_.assign(n_max + 1, {});
    for (int n = 0; n <= n_max; ++n) {
        pascal_[n][0] = 1;
        for (int j = 1; j <= detail::kMaxGapSlots; ++j) {
            pascal_[n][j] = n == 0 ? 0 : pascal_[n - 1][j - 1] + pascal_[n - 1][j];
        }
    }

    const double p_favored = (1.0 - gamma) / k + gamma;
    const double p_other = (1.0 - gamma) / k;

    levels_.resize(max_remaining + 1);
    std::vector<int> state(K);
    detail::GapArray g{};
    for (int m = 0; m <= max_remaining_; ++m) {
        const int lo = -(m + 1);
        const int hi = m + 1;
        const int alphabet = 2 * m + 3;
        levels_[m].resize(static_cast<std::size_t>(pascal_[alphabet + K - 1][K]));

        std::int64_t idx = 0;
        enumerate_sorted(state, K - 1, lo, hi, [&](const std::vector<int>& gaps) {
            double v;
            if (m == 0) {
                v = gaps[0] <= 0 ? 1.0 : 0.0;
            } else {
                std::copy(gaps.begin(), gaps.end(), g.begin());
                auto fav = detail::child_favored(g, K, m);
                v = p_favored * levels_[m - 1][rank(m - 1, fav)];
                for (int j = 0; j < K; ++j) {
                    std::copy(gaps.begin(), gaps.end(), g.begin());
                    auto oth = detail::child_other(g, K, j, m);
                    v += p_other * levels_[m - 1][rank(m - 1, oth)];
                }
            }
            levels_[m][idx++] = v;
        });
    }
}

std::int64_t DensePotentialTable::rank(int remaining, const detail::GapArray& gaps) const {
    const int K = k_ - 1;
    const int bias = remaining + 1;
    std::int64_t r = 0;
    for (int j = 0; j < K; ++j) {
        r += pascal_[gaps[j] + bias + j][j + 1];
    }
    return r;
}

double DensePotentialTable::value(const PotentialQuery& q) const {
    q.validate();
    if (q.k() != k_) throw std::invalid_argument("DensePotentialTable: query k mismatch");
    if (q.remaining > max_remaining_) throw std::out_of_range("DensePotentialTable: remaining exceeds table depth");
    auto gaps = detail::canonical_gaps(q.remaining, q.votes, q.true_label);
    return levels_[q.remaining][rank(q.remaining, gaps)];
}

double DensePotentialTable::value_gaps(int remaining, std::span<const int> gaps) const {
    if (static_cast<int>(gaps.size()) != k_ - 1) {
        throw std::invalid_argument("DensePotentialTable: wrong gap count");
    }
    if (remaining > max_remaining_) throw std::out_of_range("DensePotentialTable: remaining exceeds table depth");
    detail::GapArray g{};
    std::copy(gaps.begin(), gaps.end(), g.begin());
    detail::clip_sort_gaps(g, k_ - 1, remaining);
    return levels_[remaining][rank(remaining, g)];
}

// ---------------------------------------------------------------------------
// Monte Carlo estimation
// ---------------------------------------------------------------------------

namespace {

// One draw from u^r_gamma using a single uniform.
inline int draw_label(Rng& rng, int k, int favored, double p_favored, double p_other) {
    double u = rng.uniform01();
    if (u < p_favored) return favored;
    int idx = static_cast<int>((u - p_favored) / p_other);
    if (idx >= k - 1) idx = k - 2;
    return idx < favored ? idx : idx + 1;
}

}  // namespace

McEstimate potential_mc(const PotentialQuery& q, std::int64_t n_samples, std::uint64_t seed) {
    q.validate();
    if (n_samples < 1) throw std::invalid_argument("potential_mc: need n_samples >= 1");
    const int k = q.k();
    const double p_favored = (1.0 - q.gamma) / k + q.gamma;
    const double p_other = (1.0 - q.gamma) / k;

    Rng rng(seed);
    Eigen::VectorXi final_votes(k);
    std::int64_t losses = 0;
    for (std::int64_t n = 0; n < n_samples; ++n) {
        final_votes = q.votes;
        for (int d = 0; d < q.remaining; ++d) {
            final_votes[draw_label(rng, k, q.true_label, p_favored, p_other)] += 1;
        }
        losses += zero_one_loss(q.true_label, final_votes);
    }
    const double p = static_cast<double>(losses) / static_cast<double>(n_samples);
    double se = 0.0;
    if (n_samples > 1) {
        se = std::sqrt(p * (1.0 - p) / static_cast<double>(n_samples - 1));
    }
    return {p, se};
}

Eigen::VectorXd mc_row_differences(int true_label, int remaining, const Eigen::VectorXi& votes,
                                   double gamma, int k, std::int64_t n_samples, std::uint64_t seed) {
    if (n_samples < 1) throw std::invalid_argument("mc_row_differences: need n_samples >= 1");
    const double p_favored = (1.0 - gamma) / k + gamma;
    const double p_other = (1.0 - gamma) / k;

    Rng rng(seed);
    Eigen::VectorXi final_votes(k);
    Eigen::VectorXd diffs = Eigen::VectorXd::Zero(k);
    for (std::int64_t n = 0; n < n_samples; ++n) {
        final_votes = votes;
        for (int d = 0; d < remaining; ++d) {
            final_votes[draw_label(rng, k, true_label, p_favored, p_other)] += 1;
        }
        int best_other = std::numeric_limits<int>::min();
        for (int l = 0; l < k; ++l) {
            if (l != true_label) best_other = std::max(best_other, final_votes[l]);
        }
        const int vr = final_votes[true_label];
        const int loss_r = best_other >= vr + 1 ? 1 : 0;  // after adding e_r
        for (int l = 0; l < k; ++l) {
            if (l == true_label) continue;
            const int loss_l = (best_other >= vr || final_votes[l] + 1 >= vr) ? 1 : 0;  // after adding e_l
            diffs[l] += loss_l - loss_r;
        }
    }
    diffs /= static_cast<double>(n_samples);
    return diffs;
}

// ---------------------------------------------------------------------------
// Multinomial-sum evaluation
// ---------------------------------------------------------------------------

double potential_multinomial_sum(const PotentialQuery& q) {
    q.validate();
    const int k = q.k();
    const int K = k - 1;
    const int i = q.remaining;
    const int r = q.true_label;
    if (i == 0) return zero_one_loss(r, q.votes);

    const double p_favored = (1.0 - q.gamma) / k + q.gamma;

    std::vector<int> gap(K);
    {
        int n = 0;
        for (int l = 0; l < k; ++l) {
            if (l != r) gap[n++] = q.votes[r] - q.votes[l];
        }
    }

    // f[j][t] = P(labels j..K-1 receive exactly t of the non-favored draws
    // and each stays below its cap), with the draws split uniformly.
    std::vector<std::vector<double>> f(K + 1, std::vector<double>(i + 1, 0.0));

    double win = 0.0;
    double pmf_xr = std::pow(1.0 - p_favored, i);  // P(X_r = 0)
    for (int xr = 0; xr <= i; ++xr) {
        const int rem = i - xr;
        bool feasible = true;
        std::vector<int> cap(K);
        for (int j = 0; j < K; ++j) {
            cap[j] = xr + gap[j] - 1;
            if (cap[j] < 0) feasible = false;
        }
        if (feasible) {
            for (int t = 0; t <= rem; ++t) f[K][t] = t == 0 ? 1.0 : 0.0;
            for (int j = K - 1; j >= 0; --j) {
                const int labels_left = K - j;
                for (int t = 0; t <= rem; ++t) {
                    if (labels_left == 1) {
                        f[j][t] = t <= cap[j] ? f[j + 1][0] : 0.0;
                        continue;
                    }
                    const double p = 1.0 / labels_left;
                    double pmf = std::pow(1.0 - p, t);  // P(X_j = 0 | t draws)
                    double acc = 0.0;
                    const int x_max = std::min(t, cap[j]);
                    for (int x = 0; x <= x_max; ++x) {
                        acc += pmf * f[j + 1][t - x];
                        pmf *= static_cast<double>(t - x) / (x + 1) * p / (1.0 - p);
                    }
                    f[j][t] = acc;
                }
            }
            win += pmf_xr * f[0][rem];
        }
        // advance P(X_r = xr) -> P(X_r = xr + 1)
        pmf_xr *= static_cast<double>(i - xr) / (xr + 1) * p_favored / (1.0 - p_favored);
    }
    return 1.0 - win;
}

// ---------------------------------------------------------------------------
// Closed-form bounds
// ---------------------------------------------------------------------------

double asymptotic_error_bound(int k, double gamma, int n_learners) {
    if (k < 2) throw std::invalid_argument("asymptotic_error_bound: need k >= 2");
    if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("asymptotic_error_bound: gamma outside [0, 1)");
    if (n_learners < 1) throw std::invalid_argument("asymptotic_error_bound: need N >= 1");
    return (k - 1) * std::exp(-gamma * gamma * n_learners / 2.0);
}

double weight_norm_bound(int k, double gamma, int n_learners, int i, double c) {
    if (i < 1 || i > n_learners) throw std::invalid_argument("weight_norm_bound: need 1 <= i <= N");
    if (!(gamma < 0.5)) throw std::invalid_argument("weight_norm_bound: need gamma < 1/2");
    if (i == n_learners) return static_cast<double>(k);
    const double refined = c * std::pow(static_cast<double>(k), 2.5) / std::sqrt(static_cast<double>(n_learners - i));
    return std::min(static_cast<double>(k), refined);
}

}  // namespace mcboost
