#include "mcboost/adversary.hpp"

#include <cmath>
#include <stdexcept>

namespace mcboost {

AdversaryStream::AdversaryStream(AdversaryConfig config) : config_(config), rng_(config.seed) {
    if (config_.k < 2) throw std::invalid_argument("AdversaryStream: need k >= 2");
    if (config_.n_coords < 1) throw std::invalid_argument("AdversaryStream: need at least one coordinate");
    const double max_edge = config_.mode == AdversaryMode::two_phase ? 2.0 * config_.gamma : config_.gamma;
    if (!(config_.gamma >= 0.0 && max_edge < 1.0)) {
        throw std::invalid_argument("AdversaryStream: planted edge outside [0, 1)");
    }
    if (config_.mode == AdversaryMode::two_phase && config_.phase_boundary < 0) {
        throw std::invalid_argument("AdversaryStream: negative phase boundary");
    }
}

std::int64_t AdversaryStream::phase_boundary_for(int k, double gamma, double excess_loss) {
    if (!(gamma > 0.0)) throw std::invalid_argument("phase_boundary_for: need gamma > 0");
    return static_cast<std::int64_t>(std::floor(k * excess_loss / (4.0 * gamma)));
}

Example AdversaryStream::next() {
    ++round_;
    const int y = rng_.uniform_int(config_.k);
    double edge = config_.gamma;
    if (config_.mode == AdversaryMode::two_phase) {
        edge = round_ <= config_.phase_boundary ? 0.0 : 2.0 * config_.gamma;
    }
    const EdgeDistribution dist(config_.k, edge, y);

    Example e;
    e.label = y;
    e.weight = 1.0;
    e.features.resize(config_.n_coords);
    for (int i = 0; i < config_.n_coords; ++i) {
        e.features[i] = static_cast<double>(edge_distribution_sample(dist, rng_));
    }
    return e;
}

WlcReport empirical_wlc_check(std::span<const WlcLogEntry> log, double gamma, double excess_loss) {
    if (log.empty()) throw std::invalid_argument("empirical_wlc_check: empty log");
    const int k = log.front().cost.classes();

    double lhs = 0.0;
    double weight_sum = 0.0;
    for (const auto& entry : log) {
        if (entry.cost.kind != CostKind::eor_normalized) {
            throw std::invalid_argument("empirical_wlc_check: cost matrix is not eor_normalized");
        }
        if (entry.cost.classes() != k || entry.cost.entries.cols() != k) {
            throw std::invalid_argument("empirical_wlc_check: inconsistent cost matrix shape");
        }
        if (entry.true_label < 0 || entry.true_label >= k || entry.predicted < 0 || entry.predicted >= k) {
            throw std::invalid_argument("empirical_wlc_check: label out of range");
        }
        if (!(entry.weight >= 0.0 && entry.weight <= 1.0)) {
            throw std::invalid_argument("empirical_wlc_check: weight outside [0,1]");
        }
        lhs += entry.weight * entry.cost.entries(entry.true_label, entry.predicted);
        weight_sum += entry.weight;
    }

    WlcReport report;
    report.lhs = lhs;
    report.rhs = (1.0 - gamma) / k * weight_sum + excess_loss;
    report.margin = report.rhs - report.lhs;
    report.pass = lhs <= report.rhs;
    return report;
}

}  // namespace mcboost
