#include "mcboost/harness/checks.hpp"

#include <cmath>
#include <memory>
#include <sstream>

#include "mcboost/adversary.hpp"
#include "mcboost/mbbm.hpp"
#include "mcboost/olm.hpp"
#include "mcboost/online_opt.hpp"
#include "mcboost/potential.hpp"
#include "mcboost/rng.hpp"
#include "mcboost/weak_learner.hpp"

namespace mcboost::harness {

namespace {

// Votes uniformly at random; state-free.
class CoinLearner final : public WeakLearner {
public:
    CoinLearner(int k, std::uint64_t seed) : k_(k), rng_(std::make_shared<Rng>(seed)) {}
    int predict(const Eigen::VectorXd&) const override { return rng_->uniform_int(k_); }
    void learn(const Eigen::VectorXd&, int, double) override {}

private:
    int k_;
    std::shared_ptr<Rng> rng_;
};

CheckResult check(const std::string& name, bool pass, const std::string& detail = "") {
    return {name, pass, detail};
}

}  // namespace

std::vector<CheckResult> run_invariant_checks(std::uint64_t seed) {
    std::vector<CheckResult> out;
    Rng rng(seed);

    {  // edge distribution masses
        bool ok = true;
        for (int k = 2; k <= 6 && ok; ++k) {
            for (double g : {0.0, 0.05, 0.3, 0.45}) {
                EdgeDistribution d(k, g, rng.uniform_int(k));
                double sum = 0.0;
                for (int l = 0; l < k; ++l) sum += d.mass(l);
                if (std::abs(sum - 1.0) > 1e-12) ok = false;
                for (int l = 0; l < k; ++l) {
                    if (l != d.favored && std::abs(d.mass(d.favored) - d.mass(l) - g) > 1e-12) ok = false;
                }
            }
        }
        out.push_back(check("edge_distribution_masses", ok));
    }

    {  // argmax shift invariance
        bool ok = true;
        for (int rep = 0; rep < 200 && ok; ++rep) {
            const int k = 2 + rng.uniform_int(5);
            Eigen::VectorXd s(k);
            for (int i = 0; i < k; ++i) s[i] = rng.uniform01() * 10 - 5;
            const double shift = rng.uniform01() * 20 - 10;
            if (argmax_label(s) != argmax_label((s.array() + shift).matrix())) ok = false;
        }
        out.push_back(check("argmax_shift_invariance", ok));
    }

    {  // potential recurrence on random queries
        double worst = 0.0;
        for (int rep = 0; rep < 200; ++rep) {
            const int k = 2 + rng.uniform_int(3);
            const double g = 0.45 * rng.uniform01();
            PotentialTable table(k, g);
            PotentialQuery q;
            q.true_label = rng.uniform_int(k);
            q.remaining = rng.uniform_int(6);
            q.gamma = g;
            q.votes = Eigen::VectorXi::Zero(k);
            for (int i = 0; i < k; ++i) q.votes[i] = rng.uniform_int(4);
            PotentialQuery up = q;
            up.remaining = q.remaining + 1;
            double expect = 0.0;
            EdgeDistribution d(k, g, q.true_label);
            for (int l = 0; l < k; ++l) {
                PotentialQuery child = q;
                child.votes[l] += 1;
                expect += d.mass(l) * potential_exact(child, table);
            }
            worst = std::max(worst, std::abs(expect - potential_exact(up, table)));
        }
        std::ostringstream os;
        os << "max residual " << worst;
        out.push_back(check("potential_recurrence", worst <= 1e-12, os.str()));
    }

    {  // mbbm cost matrices stay in the normalized family
        bool ok = true;
        for (int rep = 0; rep < 5 && ok; ++rep) {
            const int k = 2 + rng.uniform_int(3);
            MbbmConfig cfg;
            cfg.k = k;
            cfg.n_learners = 4;
            cfg.gamma = 0.05 + 0.4 * rng.uniform01();
            cfg.seed = seed + rep;
            std::vector<std::unique_ptr<WeakLearner>> learners;
            for (int i = 0; i < cfg.n_learners; ++i) {
                learners.push_back(std::make_unique<CoinLearner>(k, seed + 31 * rep + i));
            }
            MbbmBooster booster(cfg, std::move(learners));
            Eigen::VectorXd x = Eigen::VectorXd::Zero(2);
            for (int t = 0; t < 40 && ok; ++t) {
                Eigen::VectorXi votes = Eigen::VectorXi::Zero(k);
                for (int i = 0; i < cfg.n_learners; ++i) {
                    if (!validate_cost_matrix(booster.cost_matrix(i, votes)).ok()) ok = false;
                    votes[rng.uniform_int(k)] += 1;
                }
                booster.predict(x);
                booster.learn(rng.uniform_int(k));
            }
        }
        out.push_back(check("mbbm_cost_matrix_family", ok));
    }

    {  // olm cost matrices are proper gradients
        bool ok = true;
        for (int rep = 0; rep < 50 && ok; ++rep) {
            const int k = 2 + rng.uniform_int(4);
            VoteVector s(k);
            for (int i = 0; i < k; ++i) s[i] = 4.0 * rng.uniform01() - 2.0;
            for (OlmLoss loss : {OlmLoss::logistic, OlmLoss::exponential, OlmLoss::square_hinge}) {
                if (!validate_cost_matrix(olm_cost_matrix(loss, s)).ok()) ok = false;
            }
        }
        out.push_back(check("olm_cost_matrix_family", ok));
    }

    {  // olm gradients match finite differences (logistic spot check)
        bool ok = true;
        double worst = 0.0;
        for (int rep = 0; rep < 100; ++rep) {
            const int k = 2 + rng.uniform_int(4);
            VoteVector s(k);
            for (int i = 0; i < k; ++i) s[i] = 4.0 * rng.uniform01() - 2.0;
            const int voted = rng.uniform_int(k);
            const int y = rng.uniform_int(k);
            const double a = 4.0 * rng.uniform01() - 2.0;
            const double h = 1e-5;
            VoteVector hi = s, lo = s;
            hi[voted] += a + h;
            lo[voted] += a - h;
            const double fd = (olm_loss(OlmLoss::logistic, y, hi) - olm_loss(OlmLoss::logistic, y, lo)) / (2 * h);
            const double an = olm_gradient(OlmLoss::logistic, a, s, voted, y);
            worst = std::max(worst, std::abs(fd - an) / std::max(1.0, std::abs(an)));
        }
        std::ostringstream os;
        os << "max rel residual " << worst;
        out.push_back(check("olm_gradient_finite_difference", worst <= 1e-6, os.str()));
    }

    {  // hedge keeps the closed form
        HedgeState hedge(5);
        std::vector<char> erred(5, 0);
        Rng local(seed ^ 0x5EED);
        std::vector<int> mistakes(5, 0);
        for (int t = 0; t < 50; ++t) {
            for (int i = 0; i < 5; ++i) {
                erred[i] = local.uniform01() < 0.3 ? 1 : 0;
                mistakes[i] += erred[i];
            }
            hedge.update(erred);
        }
        bool ok = true;
        for (int i = 0; i < 5; ++i) {
            if (hedge.mistakes(i) != mistakes[i]) ok = false;
            if (std::abs(hedge.log_weight(i) + mistakes[i]) > 0.0) ok = false;
        }
        out.push_back(check("hedge_closed_form", ok));
    }

    {  // ogd projection and fixed point
        OgdState st;
        st.alpha = 2.0;
        st.half_width = 2.0;
        st.rate_c = 1.0;
        bool ok = std::abs(ogd_step(st, -10.0).alpha - 2.0) == 0.0;
        st.alpha = 0.0;
        ok = ok && ogd_step(st, 0.0).alpha == 0.0;
        out.push_back(check("ogd_projection", ok));
    }

    {  // stump importance-weight linearity
        OnlineStump a(3), b(3);
        Rng local(seed ^ 0xABCD);
        Eigen::VectorXd x(2);
        for (int t = 0; t < 120; ++t) {
            x << local.uniform01(), local.uniform01() * 3 - 1;
            const int y = local.uniform_int(3);
            a.learn(x, y, 1.0);
            b.learn(x, y, 0.5);
            b.learn(x, y, 0.5);
        }
        bool ok = true;
        for (int f = 0; f < 2; ++f) {
            for (int c = 0; c < 3; ++c) {
                const auto& sa = a.stats(f, c);
                const auto& sb = b.stats(f, c);
                if (std::abs(sa.weight - sb.weight) > 1e-12 || std::abs(sa.mean - sb.mean) > 1e-12 ||
                    std::abs(sa.m2 - sb.m2) > 1e-12) {
                    ok = false;
                }
            }
        }
        out.push_back(check("stump_weight_linearity", ok));
    }

    {  // weak learning condition report on degenerate logs
        const int k = 3;
        CostMatrix uniform;
        uniform.kind = CostKind::eor_normalized;
        uniform.entries = Eigen::MatrixXd::Constant(k, k, 1.0 / (k - 1));
        uniform.entries.diagonal().setZero();
        std::vector<WlcLogEntry> log;
        for (int t = 0; t < 100; ++t) log.push_back({1.0, uniform, 1, 1});  // always correct
        auto rep = empirical_wlc_check(log, 0.1, 5.0);
        bool ok = rep.pass && std::abs(rep.lhs) == 0.0;
        std::vector<WlcLogEntry> zero;
        for (int t = 0; t < 10; ++t) zero.push_back({0.0, uniform, 1, 2});
        auto rep0 = empirical_wlc_check(zero, 0.1, 5.0);
        ok = ok && rep0.pass && std::abs(rep0.margin - 5.0) < 1e-12;
        out.push_back(check("wlc_degenerate_logs", ok));
    }

    return out;
}

}  // namespace mcboost::harness
