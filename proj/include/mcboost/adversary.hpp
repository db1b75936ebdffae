#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mcboost/core.hpp"
#include "mcboost/rng.hpp"

namespace mcboost {

enum class AdversaryMode {
    constant_edge,  // every coordinate drawn from u^y with the configured edge
    two_phase,      // edge 0 through the phase boundary, then 2*gamma
};

struct AdversaryConfig {
    int k = 2;
    double gamma = 0.1;             // planted edge (two_phase switches to 2*gamma)
    int n_coords = 1;               // one coordinate per oracle learner
    AdversaryMode mode = AdversaryMode::constant_edge;
    std::int64_t phase_boundary = 0;  // rounds t <= phase_boundary are pure noise
    std::uint64_t seed = 0;
};

// Stream realizing the lower-bound construction: labels uniform over [k],
// coordinates conditionally i.i.d. label-valued draws.
class AdversaryStream {
public:
    explicit AdversaryStream(AdversaryConfig config);

    Example next();
    std::int64_t round() const { return round_; }
    const AdversaryConfig& config() const { return config_; }

    // T0 = k * S / (4 * gamma), the noise-phase length.
    static std::int64_t phase_boundary_for(int k, double gamma, double excess_loss);

private:
    AdversaryConfig config_;
    Rng rng_;
    std::int64_t round_ = 0;
};

struct WlcLogEntry {
    double weight = 1.0;
    CostMatrix cost;
    int true_label = 0;
    int predicted = 0;
};

struct WlcReport {
    bool pass = false;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // rhs - lhs
};

// Evaluates the online weak-learning inequality on a logged run:
// sum_t w_t C_t[y_t, yhat_t] <= (1-gamma)/k * ||w||_1 + S.
WlcReport empirical_wlc_check(std::span<const WlcLogEntry> log, double gamma, double excess_loss);

}  // namespace mcboost
