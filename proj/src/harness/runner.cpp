#include "mcboost/harness/runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include "mcboost/mbbm.hpp"
#include "mcboost/olm.hpp"
#include "mcboost/potential.hpp"
#include "mcboost/rng.hpp"

namespace mcboost::harness {

namespace {

void run_parallel(std::vector<std::function<void()>>& tasks, int workers) {
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min<int>(workers, static_cast<int>(tasks.size())));
    if (workers == 1) {
        for (auto& t : tasks) t();
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= tasks.size()) return;
                tasks[i]();
            }
        });
    }
    for (auto& t : pool) t.join();
}

std::vector<int> shuffled_order(std::int64_t n, Rng& rng) {
    std::vector<int> order(n);
    for (std::int64_t i = 0; i < n; ++i) order[i] = static_cast<int>(i);
    for (std::int64_t i = n - 1; i > 0; --i) {
        const int j = rng.uniform_int(static_cast<int>(i) + 1);
        std::swap(order[i], order[j]);
    }
    return order;
}

LearnerFactory make_learner_factory(const ExperimentConfig& cfg, int k) {
    if (cfg.weak_learner == "stump") {
        return [cfg, k](int, std::uint64_t seed) -> std::unique_ptr<WeakLearner> {
            Rng rng(seed);
            StumpParams p;
            p.bins = cfg.stump_bins_min + rng.uniform_int(cfg.stump_bins_max - cfg.stump_bins_min + 1);
            p.refresh_period =
                cfg.stump_refresh_min + rng.uniform_int(cfg.stump_refresh_max - cfg.stump_refresh_min + 1);
            return std::make_unique<OnlineStump>(k, p);
        };
    }
    if (cfg.weak_learner == "naive_bayes") {
        return [k](int, std::uint64_t seed) -> std::unique_ptr<WeakLearner> {
            Rng rng(seed);
            NaiveBayesParams p;
            p.var_floor = std::pow(10.0, -7.0 + 2.0 * rng.uniform01());  // [1e-7, 1e-5]
            p.prior_smoothing = 0.5 + 1.5 * rng.uniform01();
            return std::make_unique<OnlineNaiveBayes>(k, p);
        };
    }
    // oracle: learner i reads coordinate i of the adversary features
    return [](int index, std::uint64_t) -> std::unique_ptr<WeakLearner> {
        return std::make_unique<EdgeOracleLearner>(index);
    };
}

struct StreamMetrics {
    double total_accuracy = 0.0;
    double final20_accuracy = 0.0;
};

// Prequential pass: predict(features) must be evaluated before the label is
// passed back via learn.
template <typename Predict, typename Learn>
StreamMetrics stream_pass(std::int64_t rounds, const std::function<const Example*(std::int64_t)>& fetch,
                          Predict&& predict, Learn&& learn) {
    const std::int64_t window = (rounds + 4) / 5;  // ceil(0.2 * T)
    std::int64_t correct = 0;
    std::int64_t correct_window = 0;
    for (std::int64_t t = 0; t < rounds; ++t) {
        const Example* e = fetch(t);
        const int yhat = predict(e->features);
        const bool ok = yhat == e->label;
        correct += ok;
        if (t >= rounds - window) correct_window += ok;
        learn(e->label);
    }
    StreamMetrics m;
    m.total_accuracy = static_cast<double>(correct) / static_cast<double>(rounds);
    m.final20_accuracy = static_cast<double>(correct_window) / static_cast<double>(window);
    return m;
}

struct Cell {
    std::string algorithm;
    std::string params;
    double gamma = 0.0;  // online_mbbm only
    int n_learners = 1;
    std::size_t id = 0;
};

struct CellAccumulator {
    int done = 0;
    double total = 0.0, final20 = 0.0, seconds = 0.0;
    std::vector<double> edge_sums;
    std::vector<int> edge_counts;
    bool partial = false;
    std::string error;
};

OlmLoss parse_loss(const std::string& name) {
    if (name == "logistic") return OlmLoss::logistic;
    if (name == "exponential") return OlmLoss::exponential;
    return OlmLoss::square_hinge;
}

WeightScaling parse_scaling(const std::string& name) {
    if (name == "lemma_bound") return WeightScaling::lemma_bound;
    if (name == "running_max") return WeightScaling::running_max;
    return WeightScaling::trivial_k;
}

std::string fingerprint_of(const ExperimentConfig& cfg, const std::string& dataset, const Cell& cell) {
    std::ostringstream os;
    os << dataset << "|" << cell.algorithm << "|" << cell.params << "|N=" << cell.n_learners << "|loss="
       << cfg.loss << "|wl=" << cfg.weak_learner << "|seed=" << cfg.master_seed;
    return os.str();
}

void write_mbbm_audit_line(std::ofstream& out, const MbbmRoundRecord& rec) {
    out << "{\"t\":" << rec.t << ",\"y\":" << rec.true_label + 1 << ",\"yhat\":" << rec.predicted + 1
        << ",\"l\":[";
    for (std::size_t i = 0; i < rec.learner_votes.size(); ++i) {
        out << (i ? "," : "") << rec.learner_votes[i] + 1;
    }
    out << "],\"w\":[";
    char buf[32];
    for (std::size_t i = 0; i < rec.raw_weights.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.9g", rec.raw_weights[i]);
        out << (i ? "," : "") << buf;
    }
    out << "]}\n";
}

void write_olm_audit_line(std::ofstream& out, const OlmBooster& booster, const OlmRoundRecord& rec) {
    out << "{\"t\":" << rec.t << ",\"y\":" << rec.true_label + 1 << ",\"yhat\":" << rec.predicted + 1
        << ",\"i\":" << rec.chosen_expert + 1 << ",\"expert_yhat\":[";
    for (std::size_t i = 0; i < rec.expert_votes.size(); ++i) {
        out << (i ? "," : "") << rec.expert_votes[i] + 1;
    }
    out << "],\"alpha\":[";
    char buf[32];
    for (std::size_t i = 0; i < rec.alphas.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.9g", rec.alphas[i]);
        out << (i ? "," : "") << buf;
    }
    out << "],\"gamma\":[";
    const auto edges = booster.empirical_edges();
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (edges[i]) {
            std::snprintf(buf, sizeof(buf), "%.9g", *edges[i]);
            out << (i ? "," : "") << buf;
        } else {
            out << (i ? "," : "") << "null";
        }
    }
    out << "]}\n";
}

struct SourceView {
    std::int64_t rounds = 0;
    int k = 0;
    std::string name;
    // fetch(t) returns the t-th example of this pass
    std::function<std::function<const Example*(std::int64_t)>(std::uint64_t reorder_seed)> make_fetch;
};

std::vector<RunResult> run_cells(const ExperimentConfig& cfg, const SourceView& source, int reorderings) {
    std::vector<int> n_grid = cfg.n_learners_grid;
    if (n_grid.empty()) n_grid.push_back(100);
    const bool tag_n = n_grid.size() > 1;

    std::vector<Cell> cells;
    for (const auto& algo : cfg.algorithms) {
        if (algo == "single_weak") {  // the baseline pool does not depend on N
            cells.push_back({algo, "", 0.0, n_grid.front(), cells.size()});
            continue;
        }
        for (int n : n_grid) {
            std::string n_tag = tag_n ? "N=" + std::to_string(n) : "";
            if (algo == "online_mbbm") {
                for (double g : cfg.gammas) {
                    std::ostringstream ps;
                    if (tag_n) ps << n_tag << ",";
                    ps << "gamma=" << g;
                    cells.push_back({algo, ps.str(), g, n, cells.size()});
                }
            } else {
                cells.push_back({algo, n_tag, 0.0, n, cells.size()});
            }
        }
    }

    std::vector<CellAccumulator> acc(cells.size());
    std::vector<double> table_seconds(cells.size(), 0.0);
    std::vector<std::shared_ptr<const DensePotentialTable>> tables(cells.size());

    // Dense tables are built once per cell and shared read-only across its
    // reorderings; infeasible sizes leave the booster in Monte Carlo mode.
    for (std::size_t c = 0; c < cells.size(); ++c) {
        if (cells[c].algorithm != "online_mbbm") continue;
        if (DensePotentialTable::cell_count(source.k, cells[c].n_learners - 1) <= cfg.potential_cell_cap) {
            const auto start = std::chrono::steady_clock::now();
            tables[c] = std::make_shared<const DensePotentialTable>(source.k, cells[c].gamma,
                                                                    cells[c].n_learners - 1);
            table_seconds[c] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        }
    }

    std::vector<std::function<void()>> tasks;
    std::vector<std::mutex> cell_mu(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
        for (int r = 0; r < reorderings; ++r) {
            tasks.push_back([&, c, r] {
                const Cell& cell = cells[c];
                CellAccumulator& out = acc[c];
                try {
                    auto fetch = source.make_fetch(derive_seed(cfg.master_seed, {cell.id, 0xF00D, static_cast<std::uint64_t>(r)}));

                    std::ofstream audit;
                    const bool auditing = !cfg.audit_log.empty() && cell.algorithm != "single_weak";
                    if (auditing) {
                        std::ostringstream name;
                        name << cfg.audit_log << "_" << cell.algorithm;
                        if (!cell.params.empty()) name << "_" << cell.params;
                        name << "_r" << r << ".jsonl";
                        const auto parent = std::filesystem::path(name.str()).parent_path();
                        if (!parent.empty()) std::filesystem::create_directories(parent);
                        audit.open(name.str());
                        if (!audit) throw DataError("cannot write audit log " + name.str());
                    }

                    auto learner_seed = [&](int i) {
                        return derive_seed(cfg.master_seed,
                                           {cell.id, static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(i)});
                    };
                    const LearnerFactory factory = make_learner_factory(cfg, source.k);

                    StreamMetrics metrics;
                    std::vector<double> edges;
                    const auto start = std::chrono::steady_clock::now();

                    if (cell.algorithm == "adaboost_olm") {
                        OlmConfig oc;
                        oc.k = source.k;
                        oc.n_learners = cell.n_learners;
                        oc.loss = parse_loss(cfg.loss);
                        oc.seed = derive_seed(cfg.master_seed, {cell.id, static_cast<std::uint64_t>(r), 0xBEEF});
                        std::vector<std::unique_ptr<WeakLearner>> learners;
                        for (int i = 0; i < cell.n_learners; ++i) learners.push_back(factory(i, learner_seed(i)));
                        OlmBooster booster(oc, std::move(learners));
                        metrics = stream_pass(
                            source.rounds, fetch, [&](const Eigen::VectorXd& x) { return booster.predict(x); },
                            [&](int y) {
                                booster.learn(y);
                                if (auditing) write_olm_audit_line(audit, booster, booster.last_record());
                            });
                        for (const auto& e : booster.empirical_edges()) {
                            edges.push_back(e ? *e : std::numeric_limits<double>::quiet_NaN());
                        }
                    } else if (cell.algorithm == "online_mbbm") {
                        MbbmConfig mc;
                        mc.k = source.k;
                        mc.n_learners = cell.n_learners;
                        mc.gamma = cell.gamma;
                        mc.scaling = parse_scaling(cfg.scaling);
                        mc.potential_cell_cap = cfg.potential_cell_cap;
                        mc.mc_samples = cfg.mc_samples;
                        mc.seed = derive_seed(cfg.master_seed, {cell.id, static_cast<std::uint64_t>(r), 0xCAFE});
                        std::vector<std::unique_ptr<WeakLearner>> learners;
                        for (int i = 0; i < cell.n_learners; ++i) learners.push_back(factory(i, learner_seed(i)));
                        MbbmBooster booster(mc, std::move(learners), tables[c]);
                        metrics = stream_pass(
                            source.rounds, fetch, [&](const Eigen::VectorXd& x) { return booster.predict(x); },
                            [&](int y) {
                                booster.learn(y);
                                if (auditing) write_mbbm_audit_line(audit, booster.last_record());
                            });
                    } else {  // single_weak: best of `best_of` independent learners
                        const int pool = cfg.best_of;
                        std::vector<std::unique_ptr<WeakLearner>> learners;
                        for (int i = 0; i < pool; ++i) learners.push_back(factory(i, learner_seed(i)));
                        const std::int64_t window = (source.rounds + 4) / 5;
                        std::vector<std::int64_t> correct(pool, 0), correct_window(pool, 0);
                        for (std::int64_t t = 0; t < source.rounds; ++t) {
                            const Example* e = fetch(t);
                            for (int i = 0; i < pool; ++i) {
                                const int yhat = learners[i]->predict(e->features);
                                const bool ok = yhat == e->label;
                                correct[i] += ok;
                                if (t >= source.rounds - window) correct_window[i] += ok;
                            }
                            for (int i = 0; i < pool; ++i) learners[i]->learn(e->features, e->label, e->weight);
                        }
                        // best-in-hindsight, chosen per metric
                        std::int64_t best_total = 0, best_window = 0;
                        for (int i = 0; i < pool; ++i) {
                            best_total = std::max(best_total, correct[i]);
                            best_window = std::max(best_window, correct_window[i]);
                        }
                        metrics.total_accuracy = static_cast<double>(best_total) / source.rounds;
                        metrics.final20_accuracy = static_cast<double>(best_window) / window;
                    }

                    const double secs =
                        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

                    std::lock_guard<std::mutex> lock(cell_mu[c]);
                    out.done += 1;
                    out.total += metrics.total_accuracy;
                    out.final20 += metrics.final20_accuracy;
                    out.seconds += secs;
                    if (!edges.empty()) {
                        if (out.edge_sums.empty()) {
                            out.edge_sums.assign(edges.size(), 0.0);
                            out.edge_counts.assign(edges.size(), 0);
                        }
                        for (std::size_t i = 0; i < edges.size(); ++i) {
                            if (!std::isnan(edges[i])) {
                                out.edge_sums[i] += edges[i];
                                out.edge_counts[i] += 1;
                            }
                        }
                    }
                } catch (const std::exception& e) {
                    std::lock_guard<std::mutex> lock(cell_mu[c]);
                    out.partial = true;
                    if (out.error.empty()) out.error = e.what();
                }
            });
        }
    }
    run_parallel(tasks, cfg.workers);

    std::vector<RunResult> results;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        RunResult res;
        res.dataset = source.name;
        res.k = source.k;
        res.algorithm = cells[c].algorithm;
        res.params = cells[c].params;
        res.fingerprint = fingerprint_of(cfg, source.name, cells[c]);
        res.partial = acc[c].partial;
        res.error = acc[c].error;
        if (acc[c].done > 0) {
            res.total_accuracy = acc[c].total / acc[c].done;
            res.final20_accuracy = acc[c].final20 / acc[c].done;
            res.wall_seconds = (acc[c].seconds + table_seconds[c]) / acc[c].done;
            for (std::size_t i = 0; i < acc[c].edge_sums.size(); ++i) {
                res.empirical_edges.push_back(acc[c].edge_counts[i] > 0
                                                  ? acc[c].edge_sums[i] / acc[c].edge_counts[i]
                                                  : std::numeric_limits<double>::quiet_NaN());
            }
        }
        results.push_back(std::move(res));
    }
    return results;
}

}  // namespace

std::vector<RunResult> run_experiment(const ExperimentConfig& cfg, const Dataset& dataset) {
    if (dataset.examples.empty()) throw DataError("empty dataset");
    int reorderings = cfg.reorderings;
    if (reorderings == 0) reorderings = dataset.examples.size() <= 2000 ? 27 : 9;

    SourceView source;
    source.rounds = static_cast<std::int64_t>(dataset.examples.size());
    source.k = dataset.k;
    source.name = dataset.name;
    const auto* examples = &dataset.examples;
    source.make_fetch = [examples](std::uint64_t seed) {
        Rng rng(seed);
        auto order = std::make_shared<std::vector<int>>(shuffled_order(examples->size(), rng));
        return [examples, order](std::int64_t t) -> const Example* { return &(*examples)[(*order)[t]]; };
    };
    return run_cells(cfg, source, reorderings);
}

std::vector<RunResult> run_experiment_adversary(const ExperimentConfig& cfg) {
    if (!cfg.use_adversary) throw ConfigError("adversary settings missing");
    int reorderings = cfg.reorderings;
    if (reorderings == 0) reorderings = 1;

    SourceView source;
    source.rounds = cfg.adversary_rounds;
    source.k = cfg.adversary_k;
    source.name = "adversary";
    source.make_fetch = [&cfg](std::uint64_t seed) {
        AdversaryConfig ac;
        ac.k = cfg.adversary_k;
        ac.gamma = cfg.adversary_gamma;
        int max_n = cfg.best_of;
        for (int n : cfg.n_learners_grid) max_n = std::max(max_n, n);
        if (cfg.n_learners_grid.empty()) max_n = std::max(max_n, 100);
        ac.n_coords = max_n;
        ac.mode = cfg.adversary_mode == "two_phase" ? AdversaryMode::two_phase : AdversaryMode::constant_edge;
        if (ac.mode == AdversaryMode::two_phase) {
            ac.phase_boundary =
                AdversaryStream::phase_boundary_for(cfg.adversary_k, cfg.adversary_gamma, cfg.adversary_excess_loss);
        }
        ac.seed = seed;
        auto stream = std::make_shared<AdversaryStream>(ac);
        auto current = std::make_shared<Example>();
        return [stream, current](std::int64_t) -> const Example* {
            *current = stream->next();
            return current.get();
        };
    };
    return run_cells(cfg, source, reorderings);
}

void emit_results(const std::vector<RunResult>& rows, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    char buf[64];

    {
        std::ofstream csv(out_dir / "results.csv");
        if (!csv) throw DataError("cannot write results.csv");
        csv << "dataset,k,algorithm,params,metric,value,status\n";
        for (const auto& r : rows) {
            const char* status = r.partial ? "partial" : "ok";
            std::snprintf(buf, sizeof(buf), "%.4f", r.final20_accuracy);
            csv << r.dataset << "," << r.k << "," << r.algorithm << "," << r.params
                << ",final20_accuracy," << buf << "," << status << "\n";
            std::snprintf(buf, sizeof(buf), "%.4f", r.total_accuracy);
            csv << r.dataset << "," << r.k << "," << r.algorithm << "," << r.params
                << ",total_accuracy," << buf << "," << status << "\n";
        }
    }
    {
        std::ofstream csv(out_dir / "timings.csv");
        if (!csv) throw DataError("cannot write timings.csv");
        csv << "dataset,k,algorithm,params,seconds\n";
        for (const auto& r : rows) {
            std::snprintf(buf, sizeof(buf), "%.4f", r.wall_seconds);
            csv << r.dataset << "," << r.k << "," << r.algorithm << "," << r.params << "," << buf << "\n";
        }
    }
    {
        std::ofstream md(out_dir / "results.md");
        if (!md) throw DataError("cannot write results.md");
        md << "| dataset | k | algorithm | params | final 20% accuracy | total accuracy | seconds |\n";
        md << "|---|---|---|---|---|---|---|\n";
        for (const auto& r : rows) {
            md << "| " << r.dataset << " | " << r.k << " | " << r.algorithm << " | " << r.params << " | ";
            std::snprintf(buf, sizeof(buf), "%.4f", r.final20_accuracy);
            md << buf << " | ";
            std::snprintf(buf, sizeof(buf), "%.4f", r.total_accuracy);
            md << buf << " | ";
            std::snprintf(buf, sizeof(buf), "%.4f", r.wall_seconds);
            md << buf;
            md << (r.partial ? " (partial: " + r.error + ") |" : " |") << "\n";
        }
    }
}

LowerBoundReport simulate_lower_bound(const LowerBoundParams& p) {
    if (p.k < 2) throw ConfigError("simulate: need k >= 2");
    if (!(p.gamma > 0.0 && p.gamma < 0.25)) throw ConfigError("simulate: gamma must lie in (0, 1/4)");
    if (!(p.delta > 0.0 && p.delta < 1.0)) throw ConfigError("simulate: delta must lie in (0, 1)");
    const double min_excess = p.k * std::log(1.0 / p.delta) / p.gamma;
    if (p.excess_loss < min_excess) {
        std::ostringstream os;
        os << "simulate: excess_loss must be >= k ln(1/delta)/gamma = " << min_excess;
        throw ConfigError(os.str());
    }
    if (p.n_learners < 1 || p.rounds < 1 || p.n_seeds < 1) {
        throw ConfigError("simulate: n_learners, rounds and seeds must be positive");
    }

    LowerBoundReport report;
    report.t0 = AdversaryStream::phase_boundary_for(p.k, p.gamma, p.excess_loss);

    {
        PotentialQuery q;
        q.true_label = 0;
        q.remaining = p.n_learners;
        q.votes = Eigen::VectorXi::Zero(p.k);
        q.gamma = 2.0 * p.gamma;
        PotentialTable table(p.k, q.gamma);
        report.exact_loss_rate = potential_exact(q, table);
    }

    for (int s = 0; s < p.n_seeds; ++s) {
        AdversaryConfig ac;
        ac.k = p.k;
        ac.n_coords = p.n_learners;
        ac.seed = derive_seed(p.master_seed, {static_cast<std::uint64_t>(s)});
        if (p.mode == AdversaryMode::two_phase) {
            ac.mode = AdversaryMode::two_phase;
            ac.gamma = p.gamma;
            ac.phase_boundary = report.t0;
        } else {
            ac.mode = AdversaryMode::constant_edge;
            ac.gamma = 2.0 * p.gamma;  // planted edge
        }
        AdversaryStream stream(ac);

        std::int64_t losses = 0, mistakes = 0, phase1 = 0;
        Eigen::VectorXi votes(p.k);
        for (std::int64_t t = 1; t <= p.rounds; ++t) {
            const Example e = stream.next();
            votes.setZero();
            for (int i = 0; i < p.n_learners; ++i) {
                votes[static_cast<int>(std::lround(e.features[i]))] += 1;
            }
            const bool mistake = argmax_label(votes) != e.label;
            losses += zero_one_loss(e.label, votes);
            mistakes += mistake;
            if (p.mode == AdversaryMode::two_phase && t <= report.t0 && mistake) ++phase1;
        }
        report.per_seed_loss_rate.push_back(static_cast<double>(losses) / p.rounds);
        report.per_seed_mistake_rate.push_back(static_cast<double>(mistakes) / p.rounds);
        if (p.mode == AdversaryMode::two_phase) report.phase1_mistakes.push_back(phase1);
    }

    for (double v : report.per_seed_loss_rate) report.mean_loss_rate += v;
    report.mean_loss_rate /= p.n_seeds;
    for (double v : report.per_seed_mistake_rate) report.mean_mistake_rate += v;
    report.mean_mistake_rate /= p.n_seeds;
    const double pooled_n = static_cast<double>(p.n_seeds) * static_cast<double>(p.rounds);
    report.pooled_stderr = std::sqrt(std::max(report.mean_loss_rate * (1.0 - report.mean_loss_rate), 0.0) / pooled_n);
    return report;
}

void emit_simulation(const LowerBoundParams& p, const LowerBoundReport& r,
                     const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::ofstream csv(out_dir / "results.csv");
    if (!csv) throw DataError("cannot write results.csv");
    char buf[64];
    csv << "seed,metric,value\n";
    auto emit = [&](const std::string& seed, const std::string& metric, double value) {
        std::snprintf(buf, sizeof(buf), "%.6f", value);
        csv << seed << "," << metric << "," << buf << "\n";
    };
    csv << ",t0," << r.t0 << "\n";
    emit("", "exact_loss_rate", r.exact_loss_rate);
    emit("", "mean_loss_rate", r.mean_loss_rate);
    emit("", "mean_mistake_rate", r.mean_mistake_rate);
    emit("", "pooled_stderr", r.pooled_stderr);
    for (int s = 0; s < p.n_seeds; ++s) {
        emit(std::to_string(s), "loss_rate", r.per_seed_loss_rate[s]);
        emit(std::to_string(s), "mistake_rate", r.per_seed_mistake_rate[s]);
        if (p.mode == AdversaryMode::two_phase) {
            csv << s << ",phase1_mistakes," << r.phase1_mistakes[s] << "\n";
        }
    }
}

}  // namespace mcboost::harness
