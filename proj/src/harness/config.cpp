#include "mcboost/harness/config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace mcboost::harness {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(std::int64_t line, const std::string& what) {
    throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

double parse_double_or(const std::string& v, std::int64_t line) {
    try {
        std::size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) fail(line, "bad number '" + v + "'");
        return d;
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        fail(line, "bad number '" + v + "'");
    }
}

std::int64_t parse_int_or(const std::string& v, std::int64_t line) {
    std::int64_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) fail(line, "bad integer '" + v + "'");
    return out;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::int64_t line_no = 0;
    std::set<std::string> seen;

    auto once = [&](const std::string& key) {
        if (!seen.insert(key).second) fail(line_no, "duplicate key '" + key + "'");
    };

    while (std::getline(in, line)) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos) fail(line_no, "expected key = value");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty()) fail(line_no, "empty key");

        if (key == "name") { once(key); cfg.name = value; }
        else if (key == "algorithm") { cfg.algorithms.push_back(value); }
        else if (key == "gamma") { cfg.gammas.push_back(parse_double_or(value, line_no)); }
        else if (key == "n_learners") { cfg.n_learners_grid.push_back(static_cast<int>(parse_int_or(value, line_no))); }
        else if (key == "loss") { once(key); cfg.loss = value; }
        else if (key == "weak_learner") { once(key); cfg.weak_learner = value; }
        else if (key == "master_seed") { once(key); cfg.master_seed = static_cast<std::uint64_t>(parse_int_or(value, line_no)); }
        else if (key == "reorderings") { once(key); cfg.reorderings = static_cast<int>(parse_int_or(value, line_no)); }
        else if (key == "best_of") { once(key); cfg.best_of = static_cast<int>(parse_int_or(value, line_no)); }
        else if (key == "scaling") { once(key); cfg.scaling = value; }
        else if (key == "potential_cell_cap") { once(key); cfg.potential_cell_cap = parse_int_or(value, line_no); }
        else if (key == "mc_samples") { once(key); cfg.mc_samples = parse_int_or(value, line_no); }
        else if (key == "workers") { once(key); cfg.workers = static_cast<int>(parse_int_or(value, line_no)); }
        else if (key == "stump.bins_min") { once(key); cfg.stump_bins_min = static_cast<int>(parse_int_or(value, line_no)); }
        else if (key == "stump.bins_max") { once(key); cfg.stump_bins_max = static_cast<int>(parse_int_or(value, line_no)); }
        else if (key == "stump.refresh_min") { once(key); cfg.stump_refresh_min = static_cast<int>(parse_int_or(value, line_no)); }
        else if (key == "stump.refresh_max") { once(key); cfg.stump_refresh_max = static_cast<int>(parse_int_or(value, line_no)); }
        else if (key == "dataset.path") { once(key); cfg.dataset_path = value; }
        else if (key == "dataset.label_column") { once(key); cfg.dataset_label_column = value; }
        else if (key == "dataset.missing") { once(key); cfg.dataset_missing = value; }
        else if (key == "adversary.k") { once(key); cfg.use_adversary = true; cfg.adversary_k = static_cast<int>(parse_int_or(value, line_no)); }
        else if (key == "adversary.gamma") { once(key); cfg.use_adversary = true; cfg.adversary_gamma = parse_double_or(value, line_no); }
        else if (key == "adversary.mode") { once(key); cfg.use_adversary = true; cfg.adversary_mode = value; }
        else if (key == "adversary.excess_loss") { once(key); cfg.use_adversary = true; cfg.adversary_excess_loss = parse_double_or(value, line_no); }
        else if (key == "adversary.rounds") { once(key); cfg.use_adversary = true; cfg.adversary_rounds = parse_int_or(value, line_no); }
        else if (key == "audit_log") { once(key); cfg.audit_log = value; }
        else if (key == "out_dir") { once(key); cfg.out_dir = value; }
        else fail(line_no, "unknown key '" + key + "'");
    }

    if (cfg.algorithms.empty()) {
        cfg.algorithms = {"single_weak", "adaboost_olm", "online_mbbm"};
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

void ExperimentConfig::validate() const {
    static const std::set<std::string> known_algorithms = {"single_weak", "online_mbbm", "adaboost_olm"};
    static const std::set<std::string> known_losses = {"logistic", "exponential", "square_hinge"};
    static const std::set<std::string> known_learners = {"stump", "naive_bayes", "oracle"};
    static const std::set<std::string> known_scalings = {"trivial_k", "lemma_bound", "running_max"};
    static const std::set<std::string> known_missing = {"reject", "zero_fill"};
    static const std::set<std::string> known_modes = {"constant_edge", "two_phase"};

    for (const auto& a : algorithms) {
        if (!known_algorithms.count(a)) throw ConfigError("unknown algorithm '" + a + "'");
    }
    if (!known_losses.count(loss)) throw ConfigError("unknown loss '" + loss + "'");
    if (!known_learners.count(weak_learner)) throw ConfigError("unknown weak_learner '" + weak_learner + "'");
    if (!known_scalings.count(scaling)) throw ConfigError("unknown scaling '" + scaling + "'");
    if (!known_missing.count(dataset_missing)) throw ConfigError("unknown dataset.missing '" + dataset_missing + "'");
    if (!known_modes.count(adversary_mode)) throw ConfigError("unknown adversary.mode '" + adversary_mode + "'");
    for (int n : n_learners_grid) {
        if (n < 1) throw ConfigError("n_learners must be >= 1");
    }
    if (best_of < 1) throw ConfigError("best_of must be >= 1");
    if (reorderings < 0) throw ConfigError("reorderings must be >= 0");
    if (mc_samples < 1) throw ConfigError("mc_samples must be >= 1");
    if (stump_bins_min < 1 || stump_bins_max < stump_bins_min) throw ConfigError("bad stump bins range");
    if (stump_refresh_min < 1 || stump_refresh_max < stump_refresh_min) throw ConfigError("bad stump refresh range");

    const bool wants_mbbm =
        std::find(algorithms.begin(), algorithms.end(), "online_mbbm") != algorithms.end();
    if (wants_mbbm && gammas.empty()) {
        throw ConfigError("online_mbbm requires at least one gamma value");
    }
    for (double g : gammas) {
        if (!(g > 0.0 && g < 0.5)) throw ConfigError("gamma values must lie in (0, 1/2)");
    }
    if (dataset_path.empty() && !use_adversary) {
        throw ConfigError("either dataset.path or adversary.* settings are required");
    }
    if (!dataset_path.empty() && use_adversary) {
        throw ConfigError("dataset.path and adversary.* settings are mutually exclusive");
    }
    if (use_adversary) {
        if (adversary_k < 2) throw ConfigError("adversary.k must be >= 2");
        if (adversary_rounds < 1) throw ConfigError("adversary.rounds must be >= 1");
        if (!(adversary_gamma >= 0.0)) throw ConfigError("adversary.gamma must be >= 0");
    }
}

}  // namespace mcboost::harness
