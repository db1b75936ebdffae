// Acceptance suite: every criterion runs at its stated tolerance and prints
// one [PASS]/[FAIL] line. Exit status is the number of failed criteria.

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "mcboost/adversary.hpp"
#include "mcboost/harness/config.hpp"
#include "mcboost/harness/dataset.hpp"
#include "mcboost/harness/runner.hpp"
#include "mcboost/mbbm.hpp"
#include "mcboost/olm.hpp"
#include "mcboost/online_opt.hpp"
#include "mcboost/potential.hpp"
#include "mcboost/rng.hpp"

using namespace mcboost;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Failure {
    std::string what;
};

void expect(bool condition, const std::string& what) {
    if (!condition) throw Failure{what};
}

// --------------------------------------------------------------------------
// C1: exact DP equals brute-force enumeration over all k^i draw sequences
// for k <= 4, i <= 6, gamma in {0, 0.1, 0.3, 0.45}, ||s||_1 <= 4.
// --------------------------------------------------------------------------

double brute_force_potential(int r, int i, const Eigen::VectorXi& s, double gamma) {
    const int k = static_cast<int>(s.size());
    if (i == 0) return zero_one_loss(r, s);
    const double pf = (1.0 - gamma) / k + gamma;
    const double po = (1.0 - gamma) / k;
    std::vector<int> seq(i, 0);
    double total = 0.0;
    while (true) {
        Eigen::VectorXi v = s;
        double p = 1.0;
        for (int d = 0; d < i; ++d) {
            v[seq[d]] += 1;
            p *= seq[d] == r ? pf : po;
        }
        total += p * zero_one_loss(r, v);
        int pos = 0;
        while (pos < i && ++seq[pos] == k) {
            seq[pos] = 0;
            ++pos;
        }
        if (pos == i) break;
    }
    return total;
}

void enumerate_votes(int k, int budget, Eigen::VectorXi& s, int pos,
                     const std::function<void(const Eigen::VectorXi&)>& fn) {
    if (pos == k) {
        fn(s);
        return;
    }
    for (int v = 0; v <= budget; ++v) {
        s[pos] = v;
        enumerate_votes(k, budget - v, s, pos + 1, fn);
    }
}

Outcome criterion1() {
    double worst = 0.0;
    std::int64_t cells = 0;
    for (int k = 2; k <= 4; ++k) {
        for (double gamma : {0.0, 0.1, 0.3, 0.45}) {
            PotentialTable table(k, gamma);
            Eigen::VectorXi s(k);
            enumerate_votes(k, 4, s, 0, [&](const Eigen::VectorXi& votes) {
                for (int i = 0; i <= 6; ++i) {
                    for (int r = 0; r < k; ++r) {
                        PotentialQuery q;
                        q.true_label = r;
                        q.remaining = i;
                        q.votes = votes;
                        q.gamma = gamma;
                        const double got = potential_exact(q, table);
                        const double want = brute_force_potential(r, i, votes, gamma);
                        worst = std::max(worst, std::abs(got - want));
                        ++cells;
                    }
                }
            });
        }
    }
    std::ostringstream os;
    os << cells << " grid cells, max |dp - enumeration| = " << worst;
    expect(worst <= 1e-12, os.str());
    return {true, os.str()};
}

// --------------------------------------------------------------------------
// C2: the recurrence and the multinomial-sum formula both hold on a
// randomized grid of 1000 queries, within 1e-12.
// --------------------------------------------------------------------------

Outcome criterion2() {
    Rng rng(20240202);
    double worst_rec = 0.0, worst_formula = 0.0;
    for (int rep = 0; rep < 1000; ++rep) {
        const int k = 2 + rng.uniform_int(4);
        const double gamma = 0.49 * rng.uniform01();
        PotentialTable table(k, gamma);
        const int i = rng.uniform_int(9);
        Eigen::VectorXi s(k);
        for (int j = 0; j < k; ++j) s[j] = rng.uniform_int(6);
        const int r = rng.uniform_int(k);

        PotentialQuery q;
        q.true_label = r;
        q.remaining = i;
        q.votes = s;
        q.gamma = gamma;

        EdgeDistribution dist(k, gamma, r);
        double expect_up = 0.0;
        for (int l = 0; l < k; ++l) {
            PotentialQuery child = q;
            child.votes[l] += 1;
            expect_up += dist.mass(l) * potential_exact(child, table);
        }
        PotentialQuery up = q;
        up.remaining = i + 1;
        worst_rec = std::max(worst_rec, std::abs(potential_exact(up, table) - expect_up));
        worst_formula = std::max(worst_formula,
                                 std::abs(potential_exact(q, table) - potential_multinomial_sum(q)));
    }
    std::ostringstream os;
    os << "recurrence residual " << worst_rec << ", formula residual " << worst_formula;
    expect(worst_rec <= 1e-12 && worst_formula <= 1e-12, os.str());
    return {true, os.str()};
}

// --------------------------------------------------------------------------
// C3: phi^1_N(0) <= (k-1) exp(-gamma^2 N / 2) on the full grid, exactly.
// --------------------------------------------------------------------------

Outcome criterion3() {
    double min_slack = 1e300;
    for (int k : {2, 3, 5}) {
        for (double gamma : {0.05, 0.1, 0.3}) {
            PotentialTable table(k, gamma);
            for (int n = 5; n <= 50; n += 5) {
                PotentialQuery q;
                q.true_label = 0;
                q.remaining = n;
                q.votes = Eigen::VectorXi::Zero(k);
                q.gamma = gamma;
                const double phi = potential_exact(q, table);
                const double bound = asymptotic_error_bound(k, gamma, n);
                std::ostringstream os;
                os << "k=" << k << " gamma=" << gamma << " N=" << n << ": phi=" << phi
                   << " > bound=" << bound;
                expect(phi <= bound, os.str());
                min_slack = std::min(min_slack, bound - phi);
            }
        }
    }
    std::ostringstream os;
    os << "90 grid points, min slack " << min_slack;
    return {true, os.str()};
}

// --------------------------------------------------------------------------
// C4: OnlineMBBM with edge oracles (k=3, gamma=0.3, N=20, T=5e4, 20 seeds)
// attains the DP-exact loss floor within 3 pooled standard errors, below
// the closed-form bound 2 exp(-0.9).
// --------------------------------------------------------------------------

Outcome criterion4() {
    const int k = 3, N = 20, seeds = 20;
    const double gamma = 0.3;
    const std::int64_t T = 50000;

    double exact;
    {
        PotentialQuery q;
        q.true_label = 0;
        q.remaining = N;
        q.votes = Eigen::VectorXi::Zero(k);
        q.gamma = gamma;
        PotentialTable table(k, gamma);
        exact = potential_exact(q, table);
    }

    auto shared = std::make_shared<const DensePotentialTable>(k, gamma, N - 1);
    std::int64_t losses = 0;
    for (int s = 0; s < seeds; ++s) {
        MbbmConfig cfg;
        cfg.k = k;
        cfg.n_learners = N;
        cfg.gamma = gamma;
        cfg.seed = derive_seed(404, {static_cast<std::uint64_t>(s), 1});
        std::vector<std::unique_ptr<WeakLearner>> learners;
        for (int i = 0; i < N; ++i) learners.push_back(std::make_unique<EdgeOracleLearner>(i));
        MbbmBooster booster(cfg, std::move(learners), shared);

        AdversaryConfig ac;
        ac.k = k;
        ac.gamma = gamma;
        ac.n_coords = N;
        ac.seed = derive_seed(404, {static_cast<std::uint64_t>(s), 2});
        AdversaryStream stream(ac);
        Eigen::VectorXi votes(k);
        for (std::int64_t t = 0; t < T; ++t) {
            const Example e = stream.next();
            booster.predict(e.features);
            booster.learn(e.label);
            votes.setZero();
            for (int v : booster.last_record().learner_votes) votes[v] += 1;
            losses += zero_one_loss(e.label, votes);
        }
    }
    const double n_total = static_cast<double>(seeds) * static_cast<double>(T);
    const double mean = static_cast<double>(losses) / n_total;
    const double se = std::sqrt(std::max(exact * (1.0 - exact), 1e-12) / n_total);
    const double lemma_bound = 2.0 * std::exp(-0.9);

    std::ostringstream os;
    os << "mean loss " << mean << " vs exact " << exact << " (3se = " << 3 * se << "), bound "
       << lemma_bound;
    expect(std::abs(mean - exact) <= 3 * se, os.str());
    expect(mean < lemma_bound, os.str());
    return {true, os.str()};
}

// --------------------------------------------------------------------------
// C5: OGD with the paper schedule never exceeds regret 4*sqrt(2)*(k-1)*sqrt(T)
// against the best fixed vote weight (grid resolution 1e-3) on 100
// adversarial logistic sequences, T = 1e4, k in {2, 5}.
// --------------------------------------------------------------------------

Outcome criterion5() {
    const std::int64_t T = 10000;
    const int grid_n = 4001;
    Eigen::ArrayXd grid(grid_n);
    for (int g = 0; g < grid_n; ++g) grid[g] = -2.0 + g * 1e-3;

    double worst_ratio = 0.0;
    for (int k : {2, 5}) {
        const double bound = 4.0 * std::sqrt(2.0) * (k - 1) * std::sqrt(static_cast<double>(T));
        for (int seq = 0; seq < 50; ++seq) {
            Rng rng(derive_seed(5005, {static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(seq)}));
            OgdState state;
            state.half_width = 2.0;
            state.rate_c = olm_rate_constant(OlmLoss::logistic, k, 1, 1);

            Eigen::ArrayXd cum = Eigen::ArrayXd::Zero(grid_n);
            double ogd_cost = 0.0;
            for (std::int64_t t = 0; t < T; ++t) {
                VoteVector s(k);
                for (int j = 0; j < k; ++j) s[j] = 4 * rng.uniform01() - 2;
                const int y = rng.uniform_int(k);
                int l = rng.uniform_int(k);
                if (rng.uniform01() < 0.7 && l == y) l = (l + 1) % k;

                // alpha-dependent terms only; constants cancel in the regret
                if (l != y) {
                    const double c = s[l] - s[y];
                    ogd_cost += std::log1p(std::exp(c + state.alpha));
                    cum += (grid + c).exp().log1p();
                } else {
                    for (int j = 0; j < k; ++j) {
                        if (j == y) continue;
                        const double c = s[j] - s[y];
                        ogd_cost += std::log1p(std::exp(c - state.alpha));
                        cum += (c - grid).exp().log1p();
                    }
                }
                state = ogd_step(state, olm_gradient(OlmLoss::logistic, state.alpha, s, l, y));
            }
            const double regret = ogd_cost - cum.minCoeff();
            std::ostringstream os;
            os << "k=" << k << " seq=" << seq << ": regret " << regret << " > bound " << bound;
            expect(regret <= bound, os.str());
            worst_ratio = std::max(worst_ratio, regret / bound);
        }
    }
    std::ostringstream os;
    os << "100 sequences, worst regret/bound = " << worst_ratio;
    return {true, os.str()};
}

// --------------------------------------------------------------------------
// C6: analytic gradients match central finite differences (step 1e-5)
// within 1e-6 relative error, 1000 randomized checks per loss variant;
// square-hinge samples within 1e-3 of a kink are excluded.
// --------------------------------------------------------------------------

Outcome criterion6() {
    Rng rng(606);
    double worst = 0.0;
    for (OlmLoss variant : {OlmLoss::logistic, OlmLoss::exponential, OlmLoss::square_hinge}) {
        int done = 0;
        while (done < 1000) {
            const int k = 2 + rng.uniform_int(4);
            VoteVector s(k);
            for (int i = 0; i < k; ++i) s[i] = 4 * rng.uniform01() - 2;
            const int voted = rng.uniform_int(k);
            const int y = rng.uniform_int(k);
            const double alpha = 4 * rng.uniform01() - 2;
            if (variant == OlmLoss::square_hinge) {
                bool near_kink = false;
                for (int j = 0; j < k; ++j) {
                    const double arg = voted == y ? s[j] - s[y] - alpha + 1 : s[voted] + alpha - s[y] + 1;
                    if (std::abs(arg) < 1e-3) near_kink = true;
                }
                if (near_kink) continue;
            }
            const double h = 1e-5;
            VoteVector hi = s, lo = s;
            hi[voted] += alpha + h;
            lo[voted] += alpha - h;
            const double fd = (olm_loss(variant, y, hi) - olm_loss(variant, y, lo)) / (2 * h);
            const double an = olm_gradient(variant, alpha, s, voted, y);
            const double rel = std::abs(an - fd) / std::max(1.0, std::abs(an));
            worst = std::max(worst, rel);
            ++done;
        }
    }
    std::ostringstream os;
    os << "3000 checks, worst relative residual " << worst;
    expect(worst <= 1e-6, os.str());
    return {true, os.str()};
}

// --------------------------------------------------------------------------
// C7: LEA over 10 experts, T = 1e4, adversarial normalized-cost streams:
// cumulative cost <= best expert + sqrt(T ln 10 / 2) + sqrt(T ln 20 / 2)
// in at least 95 of 100 seeded runs.
// --------------------------------------------------------------------------

Outcome criterion7() {
    const int n_experts = 10, n_seeds = 100;
    const std::int64_t T = 10000;
    const int k = 4;
    const double slack = std::sqrt(T * std::log(10.0) / 2.0) + std::sqrt(T * std::log(20.0) / 2.0);

    int passes = 0;
    double worst_excess = -1e300;
    for (int seed = 0; seed < n_seeds; ++seed) {
        Rng rng(derive_seed(707, {static_cast<std::uint64_t>(seed)}));
        LeaState lea(n_experts, T);
        CostMatrix cost;
        cost.kind = CostKind::eor_normalized;
        cost.entries.resize(k, k);
        std::vector<int> advice(n_experts);
        for (std::int64_t t = 0; t < T; ++t) {
            // adversarial normalized cost rows, resampled each round
            for (int r = 0; r < k; ++r) {
                double total = 0.0;
                for (int l = 0; l < k; ++l) {
                    if (l == r) {
                        cost.entries(r, l) = 0.0;
                    } else {
                        cost.entries(r, l) = 0.05 + rng.uniform01();
                        total += cost.entries(r, l);
                    }
                }
                for (int l = 0; l < k; ++l) {
                    if (l != r) cost.entries(r, l) /= total;
                }
            }
            const int y = rng.uniform_int(k);
            // expert quality drifts mid-stream
            const int strong = t < T / 2 ? 0 : 1;
            for (int i = 0; i < n_experts; ++i) {
                const double good = i == strong ? 0.8 : 0.25;
                advice[i] = rng.uniform01() < good ? y : rng.uniform_int(k);
            }
            lea.lea_round(advice, 0.25 + 0.75 * rng.uniform01(), cost, y, rng);
        }
        const double best = lea.cumulative_costs().minCoeff();
        const double excess = lea.own_cost() - best;
        worst_excess = std::max(worst_excess, excess);
        passes += excess <= slack;
    }
    std::ostringstream os;
    os << passes << "/100 runs within slack " << slack << " (worst excess " << worst_excess << ")";
    expect(passes >= 95, os.str());
    return {true, os.str()};
}

// --------------------------------------------------------------------------
// C8: on the built-in Balance and Cars tables, averaged over 27 seeded
// reorderings with N = 100 stumps, Adaboost.OLM beats the best single stump
// on final-20% accuracy by >= 0.005, and OnlineMBBM at its best swept gamma
// is within 0.05 of Adaboost.OLM.
// --------------------------------------------------------------------------

Outcome criterion8(const fs::path& scratch) {
    using namespace mcboost::harness;
    std::ostringstream os;
    for (const char* which : {"balance", "cars"}) {
        const Dataset ds = std::string(which) == "balance" ? make_balance_dataset(scratch / "data")
                                                           : make_cars_dataset(scratch / "data");
        ExperimentConfig cfg;
        cfg.algorithms = {"single_weak", "adaboost_olm", "online_mbbm"};
        cfg.gammas = {0.3, 0.1, 0.05, 0.01, 0.001};
        cfg.n_learners_grid = {100};
        cfg.best_of = 20;
        cfg.reorderings = 27;
        cfg.master_seed = 8008;
        cfg.potential_cell_cap = 60'000'000;  // exact tables for k = 4, N = 100
        cfg.dataset_path = "builtin";
        cfg.use_adversary = false;

        const auto results = run_experiment(cfg, ds);
        double best_single = -1, olm = -1, best_mbbm = -1;
        for (const auto& r : results) {
            expect(!r.partial, std::string(which) + ": partial cell: " + r.error);
            if (r.algorithm == "single_weak") best_single = r.final20_accuracy;
            if (r.algorithm == "adaboost_olm") olm = r.final20_accuracy;
            if (r.algorithm == "online_mbbm") best_mbbm = std::max(best_mbbm, r.final20_accuracy);
        }
        os << which << ": single " << best_single << ", olm " << olm << ", best mbbm " << best_mbbm
           << "; ";
        expect(olm >= best_single + 0.005,
               std::string(which) + ": adaboost_olm " + std::to_string(olm) + " vs single stump " +
                   std::to_string(best_single));
        expect(best_mbbm >= olm - 0.05, std::string(which) + ": best mbbm " + std::to_string(best_mbbm) +
                                            " vs olm " + std::to_string(olm));
    }
    return {true, os.str()};
}

// --------------------------------------------------------------------------
// C9: the two-phase adversary (k=3, gamma=0.1, S=30, T0=225) forces at
// least 0.55*T0 mistakes during the noise phase in >= 95/100 seeds.
// --------------------------------------------------------------------------

Outcome criterion9() {
    using namespace mcboost::harness;
    LowerBoundParams p;
    p.k = 3;
    p.gamma = 0.1;
    p.excess_loss = 30.0;
    p.n_learners = 10;
    p.rounds = 225;
    p.n_seeds = 100;
    p.mode = AdversaryMode::two_phase;
    p.master_seed = 909;
    p.delta = 0.5;  // S = 30 satisfies S >= k ln(1/delta)/gamma only for delta >= 1/e
    const auto report = simulate_lower_bound(p);
    expect(report.t0 == 225, "unexpected phase boundary");
    int passes = 0;
    for (auto m : report.phase1_mistakes) passes += m >= 0.55 * 225;
    std::ostringstream os;
    os << passes << "/100 seeds with >= " << 0.55 * 225 << " noise-phase mistakes (T0 = 225)";
    expect(passes >= 95, os.str());
    return {true, os.str()};
}

// --------------------------------------------------------------------------
// C10: identical master seeds give byte-identical results.csv for both the
// run and simulate CLI subcommands.
// --------------------------------------------------------------------------

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Outcome criterion10(const fs::path& scratch) {
    using namespace mcboost::harness;
    const fs::path data = scratch / "data";
    fs::create_directories(data);
    write_csv(generate_balance_table(), data / "balance.csv");

    const fs::path config = scratch / "det.cfg";
    {
        std::ofstream out(config);
        out << "algorithm = single_weak\n"
            << "algorithm = adaboost_olm\n"
            << "algorithm = online_mbbm\n"
            << "gamma = 0.1\n"
            << "n_learners = 8\n"
            << "best_of = 4\n"
            << "reorderings = 3\n"
            << "master_seed = 4242\n"
            << "dataset.path = " << (data / "balance.csv").string() << "\n";
    }

    auto shell = [&](const std::string& args, const fs::path& out_dir) {
        std::ostringstream cmd;
        cmd << MCBOOST_CLI_PATH << " " << args << " --out " << out_dir.string() << " > /dev/null 2>&1";
        return std::system(cmd.str().c_str());
    };

    expect(shell("run --config " + config.string(), scratch / "runA") == 0, "run A failed");
    expect(shell("run --config " + config.string(), scratch / "runB") == 0, "run B failed");
    const std::string run_a = slurp(scratch / "runA" / "results.csv");
    expect(!run_a.empty(), "run produced an empty results.csv");
    expect(run_a == slurp(scratch / "runB" / "results.csv"), "run results.csv differ across reruns");

    const std::string sim_args =
        "simulate --k 3 --gamma 0.1 --excess-loss 140 --n-learners 10 --rounds 3000 --seeds 5 "
        "--master-seed 777 --mode two_phase";
    expect(shell(sim_args, scratch / "simA") == 0, "simulate A failed");
    expect(shell(sim_args, scratch / "simB") == 0, "simulate B failed");
    const std::string sim_a = slurp(scratch / "simA" / "results.csv");
    expect(!sim_a.empty(), "simulate produced an empty results.csv");
    expect(sim_a == slurp(scratch / "simB" / "results.csv"), "simulate results.csv differ across reruns");

    return {true, "run and simulate rerun byte-identically"};
}

struct Criterion {
    int id;
    const char* name;
    double budget_seconds;  // 0 = no stated budget
    std::function<Outcome()> fn;
};

}  // namespace

int main(int argc, char** argv) {
    const fs::path scratch = fs::temp_directory_path() / "mcboost_acceptance";
    fs::create_directories(scratch);

    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);

    std::vector<Criterion> criteria = {
        {1, "potential oracle equivalence", 60, criterion1},
        {2, "recurrence and multinomial-sum cross-check", 60, criterion2},
        {3, "closed-form bound on phi", 0, criterion3},
        {4, "booster error-floor reproduction", 300, criterion4},
        {5, "projected OGD regret", 120, criterion5},
        {6, "gradient/finite-difference coherence", 0, criterion6},
        {7, "expert-advice regret", 0, criterion7},
        {8, "boosting improvement on benchmark tables", 1200, [&] { return criterion8(scratch); }},
        {9, "two-phase lower-bound simulation", 120, criterion9},
        {10, "determinism of run and simulate", 0, [&] { return criterion10(scratch); }},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        if (only != 0 && c.id != only) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = c.fn();
        } catch (const Failure& f) {
            outcome = {false, f.what};
        } catch (const std::exception& e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (outcome.pass && c.budget_seconds > 0 && secs > c.budget_seconds) {
            outcome.pass = false;
            outcome.detail += " [exceeded " + std::to_string(c.budget_seconds) + "s budget]";
        }
        std::printf("[%s] C%-2d %-46s (%.1fs) %s\n", outcome.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                    outcome.detail.c_str());
        std::fflush(stdout);
        failures += outcome.pass ? 0 : 1;
    }
    return failures;
}
