#include "mcboost/core.hpp"

#include <cmath>
#include <sstream>

namespace mcboost {

std::string CostMatrixReport::to_string() const {
    std::ostringstream os;
    for (const auto& [row, what] : row_violations) {
        os << "row " << (row + 1) << ": " << what << "\n";
    }
    return os.str();
}

CostMatrixReport validate_cost_matrix(const CostMatrix& c, double l1_tol) {
    if (c.entries.rows() != c.entries.cols()) {
        throw std::invalid_argument("validate_cost_matrix: matrix must be square");
    }
    const int k = c.classes();
    CostMatrixReport report;

    for (int r = 0; r < k; ++r) {
        const auto row = c.entries.row(r);
        if (c.kind == CostKind::eor_normalized) {
            if (std::abs(row(r)) > 1e-12) {
                report.row_violations.emplace_back(r, "diagonal entry is not zero");
            }
            bool nonneg = true;
            for (int l = 0; l < k; ++l) {
                if (row(l) < -1e-12) nonneg = false;
            }
            if (!nonneg) report.row_violations.emplace_back(r, "negative entry");
            double l1 = row.cwiseAbs().sum();
            if (l1 > 1e-12 && std::abs(l1 - 1.0) > l1_tol) {
                std::ostringstream os;
                os << "row L1 norm is " << l1 << ", expected 1 or a zero row";
                report.row_violations.emplace_back(r, os.str());
            }
        } else {
            double offdiag_sum = 0.0;
            bool nonneg = true;
            double row_min = row(0);
            for (int l = 0; l < k; ++l) {
                row_min = std::min(row_min, row(l));
                if (l == r) continue;
                offdiag_sum += row(l);
                if (row(l) < -1e-12) nonneg = false;
            }
            if (!nonneg) report.row_violations.emplace_back(r, "negative off-diagonal entry");
            if (std::abs(row(r) + offdiag_sum) > l1_tol * std::max(1.0, offdiag_sum)) {
                report.row_violations.emplace_back(r, "diagonal is not the negated off-diagonal sum");
            }
            if (row(r) > row_min + 1e-12) {
                report.row_violations.emplace_back(r, "diagonal is not the row minimum");
            }
        }
    }
    return report;
}

int edge_distribution_sample(const EdgeDistribution& d, Rng& rng) {
    double u = rng.uniform01();
    double acc = 0.0;
    for (int l = 0; l < d.k; ++l) {
        acc += d.mass(l);
        if (u < acc) return l;
    }
    return d.k - 1;
}

}  // namespace mcboost
