#pragma once

// JSON-configured simulation runs: several independent chains on one
// ensemble, optional exact enumeration at n <= 6 as an oracle, and an
// edge-density mode report for bimodality checks.
//
// Config keys (lengths in sweeps of n(n-1)/2 proposals):
//   n                 int, required
//   subgraph          "edge" | "triangle" | "star:K" | "cycle:M" | {"m": M, "edges": [[a,b],...]}
//   ensemble          "canonical" (default) | "microcanonical"
//   theta             number or "hat" (critical multiplier of k); canonical only
//   t_star, window    microcanonical only; window defaults to 2/n
//   chains            default 1
//   sweeps, burn_in, thinning   defaults 2000, 200, 1
//   seed              optional; drawn from std::random_device when absent
//   init              "er" (default), "modes" (alternate u1/u2 at theta), or a density
//   record_lambda     default true
//   histogram_bins    default 100
//   exact             default true when n <= 6
//   bimodality        default false

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "bee/chain.hpp"
#include "bee/enumeration.hpp"
#include "bee/errors.hpp"
#include "bee/phase.hpp"

namespace bee {

struct SimulationConfig {
    int n = 0;
    SubgraphSpec F = SubgraphSpec::edge();
    bool canonical = true;
    std::optional<double> theta;  // nullopt means "hat"
    double t_star = 0.0;
    std::optional<double> window;
    int chains = 1;
    double sweeps = 2000;
    double burn_in = 200;
    double thinning = 1;
    std::optional<std::uint64_t> seed;
    std::string init = "er";
    std::optional<double> init_density;
    bool record_lambda = true;
    int histogram_bins = 100;
    std::optional<bool> exact;
    bool bimodality = false;
    nlohmann::json source;  // config as given
};

inline std::optional<SubgraphSpec> parse_subgraph(const nlohmann::json& j, std::string& err) {
    try {
        if (j.is_string()) {
            const std::string s = j.get<std::string>();
            if (s == "edge") return SubgraphSpec::edge();
            if (s == "triangle") return SubgraphSpec::triangle();
            const auto colon = s.find(':');
            if (colon != std::string::npos) {
                const std::string kind = s.substr(0, colon);
                std::size_t used = 0;
                const int v = std::stoi(s.substr(colon + 1), &used);
                if (used == s.size() - colon - 1) {
                    if (kind == "star") return SubgraphSpec::star(v);
                    if (kind == "cycle") return SubgraphSpec::cycle(v);
                }
            }
            err = "subgraph: unknown form '" + s + "'";
            return std::nullopt;
        }
        if (j.is_object() && j.contains("m") && j.contains("edges")) {
            std::vector<std::pair<int, int>> edges;
            for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
            return SubgraphSpec(j.at("m").get<int>(), edges, j.value("name", std::string("custom")));
        }
        err = "subgraph: expected a string or {\"m\", \"edges\"}";
    } catch (const std::exception& e) {
        err = std::string("subgraph: ") + e.what();
    }
    return std::nullopt;
}

/// Parses and validates a config. Every problem found is reported together in
/// one InputError.
inline SimulationConfig parse_simulation_config(const nlohmann::json& j) {
    std::vector<std::string> errs;
    SimulationConfig c;
    c.source = j;
    if (!j.is_object()) throw InputError("config: top level must be a JSON object");

    static const std::vector<std::string> known = {
        "n", "subgraph", "ensemble", "theta", "t_star", "window", "chains", "sweeps", "burn_in",
        "thinning", "seed", "init", "record_lambda", "histogram_bins", "exact", "bimodality"};
    for (const auto& [key, _] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) errs.push_back("unknown key '" + key + "'");
    }

    const auto number = [&](const char* key, auto& out, bool required) {
        if (!j.contains(key)) {
            if (required) errs.push_back(std::string("missing '") + key + "'");
            return;
        }
        if (!j.at(key).is_number()) {
            errs.push_back(std::string("'") + key + "' must be a number");
            return;
        }
        out = j.at(key).get<std::remove_reference_t<decltype(out)>>();
    };
    const auto boolean = [&](const char* key, auto& out) {
        if (!j.contains(key)) return;
        if (!j.at(key).is_boolean()) errs.push_back(std::string("'") + key + "' must be true or false");
        else out = j.at(key).get<bool>();
    };

    number("n", c.n, true);
    if (j.contains("subgraph")) {
        std::string err;
        if (auto F = parse_subgraph(j.at("subgraph"), err)) c.F = *F;
        else errs.push_back(err);
    } else {
        errs.emplace_back("missing 'subgraph'");
    }
    std::string ens = "canonical";
    if (j.contains("ensemble")) {
        if (j.at("ensemble").is_string()) ens = j.at("ensemble").get<std::string>();
        else ens.clear();
    }
    if (ens != "canonical" && ens != "microcanonical") errs.push_back("ensemble must be canonical or microcanonical");
    c.canonical = ens != "microcanonical";
    if (c.canonical) {
        if (!j.contains("theta")) {
            errs.emplace_back("missing 'theta'");
        } else if (j.at("theta").is_string()) {
            if (j.at("theta").get<std::string>() != "hat") errs.emplace_back("theta must be a number or \"hat\"");
        } else if (j.at("theta").is_number()) {
            c.theta = j.at("theta").get<double>();
        } else {
            errs.emplace_back("theta must be a number or \"hat\"");
        }
        if (j.contains("t_star") || j.contains("window")) errs.emplace_back("t_star/window apply only to microcanonical runs");
    } else {
        number("t_star", c.t_star, true);
        double w = 0.0;
        if (j.contains("window")) {
            number("window", w, false);
            c.window = w;
        }
        if (j.contains("theta")) errs.emplace_back("theta applies only to canonical runs");
    }
    number("chains", c.chains, false);
    number("sweeps", c.sweeps, false);
    number("burn_in", c.burn_in, false);
    number("thinning", c.thinning, false);
    if (j.contains("seed")) {
        const auto& v = j.at("seed");
        const bool ok = v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0);
        if (!ok) errs.emplace_back("seed must be a non-negative integer");
        else c.seed = v.get<std::uint64_t>();
    }
    if (j.contains("init")) {
        const auto& v = j.at("init");
        if (v.is_number()) {
            c.init = "density";
            c.init_density = v.get<double>();
        } else if (v.is_string() && (v == "er" || v == "modes")) {
            c.init = v.get<std::string>();
        } else {
            errs.emplace_back("init must be \"er\", \"modes\" or a density");
        }
    }
    boolean("record_lambda", c.record_lambda);
    number("histogram_bins", c.histogram_bins, false);
    if (j.contains("exact")) {
        bool e = false;
        boolean("exact", e);
        c.exact = e;
    }
    boolean("bimodality", c.bimodality);

    if (c.n < 2) errs.emplace_back("n must be >= 2");
    if (c.chains < 1) errs.emplace_back("chains must be >= 1");
    if (!(c.sweeps > 0)) errs.emplace_back("sweeps must be > 0");
    if (c.sweeps > 0 && !(c.burn_in >= 0 && c.burn_in < c.sweeps)) errs.emplace_back("burn_in must lie in [0, sweeps)");
    if (!(c.thinning > 0)) errs.emplace_back("thinning must be > 0");
    if (c.histogram_bins < 1) errs.emplace_back("histogram_bins must be >= 1");
    if (c.theta && !std::isfinite(*c.theta)) errs.emplace_back("theta must be finite");
    if (!c.canonical && !(c.t_star > 0.0 && c.t_star < 1.0)) errs.emplace_back("t_star must lie in (0,1)");
    if (c.window && !(*c.window > 0.0)) errs.emplace_back("window must be > 0");
    if (c.init_density && !(*c.init_density >= 0.0 && *c.init_density <= 1.0)) errs.emplace_back("init density must lie in [0,1]");
    if (c.init == "modes" && !c.canonical) errs.emplace_back("init \"modes\" needs a canonical run");
    if (c.exact.value_or(false) && c.n > 6) errs.emplace_back("exact enumeration needs n <= 6");

    if (!errs.empty()) {
        std::string msg = "config has " + std::to_string(errs.size()) + " problem(s):";
        for (const auto& e : errs) msg += "\n  - " + e;
        throw InputError(msg);
    }
    return c;
}

struct PooledMean {
    double mean = 0.0;
    double std_error = 0.0;
};

inline PooledMean pool(const std::vector<ChainStats>& runs, TraceSummary ChainStats::*field) {
    PooledMean p;
    double var = 0.0;
    for (const auto& r : runs) {
        p.mean += (r.*field).mean;
        var += (r.*field).std_error * (r.*field).std_error;
    }
    const double c = double(runs.size());
    p.mean /= c;
    p.std_error = std::sqrt(var) / c;
    return p;
}

struct SimulationResult {
    SimulationConfig config;
    std::uint64_t seed = 0;
    double theta = 0.0;  // resolved canonical multiplier
    std::vector<ChainConfig> chain_configs;
    std::vector<ChainStats> chains;
    std::vector<std::uint64_t> histogram;
    std::vector<double> modes;
    std::optional<StationaryProfile> predicted;  // canonical maximisers at theta
    std::optional<EnumerationResult> exact;
    nlohmann::json summary;
};

inline SimulationResult run_simulation(const SimulationConfig& cfg) {
    SimulationResult res;
    res.config = cfg;
    res.seed = cfg.seed.value_or(0);
    if (!cfg.seed) {
        std::random_device rd;
        res.seed = (std::uint64_t(rd()) << 32) ^ rd();
    }
    const std::int64_t pairs = std::int64_t(cfg.n) * (cfg.n - 1) / 2;
    const auto proposals = [pairs](double sweeps) { return std::int64_t(std::llround(sweeps * double(pairs))); };

    EnsembleMode mode = Canonical{0.0};
    if (cfg.canonical) {
        res.theta = cfg.theta ? *cfg.theta : find_theta_hat(double(cfg.F.k())).theta_hat;
        mode = Canonical{res.theta};
        if (res.theta >= 0.0) res.predicted = find_local_maxima({res.theta, double(cfg.F.k())});
    } else {
        mode = Microcanonical{cfg.t_star, cfg.window.value_or(2.0 / cfg.n)};
    }
    for (int c = 0; c < cfg.chains; ++c) {
        ChainConfig cc;
        cc.n = cfg.n;
        cc.F = cfg.F;
        cc.mode = mode;
        cc.sweeps = proposals(cfg.sweeps);
        cc.burn_in = proposals(cfg.burn_in);
        cc.thinning = std::max<std::int64_t>(1, proposals(cfg.thinning));
        cc.seed = mix_seed(res.seed, std::uint64_t(c));
        cc.record_lambda = cfg.record_lambda;
        cc.histogram_bins = cfg.histogram_bins;
        if (cfg.init_density) cc.init_density = cfg.init_density;
        if (cfg.init == "modes" && res.predicted) {
            const StationaryProfile& p = *res.predicted;
            const LocalMax& lo = p.first ? *p.first : *p.second;
            const LocalMax& hi = p.second ? *p.second : *p.first;
            cc.init_density = c % 2 == 0 ? lo.u : hi.u;
        }
        res.chain_configs.push_back(cc);
    }
    res.chains = run_chains(res.chain_configs);

    res.histogram.assign(std::size_t(cfg.histogram_bins), 0);
    for (const auto& r : res.chains)
        for (std::size_t b = 0; b < r.histogram.size(); ++b) res.histogram[b] += r.histogram[b];
    res.modes = histogram_modes(res.histogram);

    if (cfg.exact.value_or(cfg.n <= 6) && cfg.n <= 6) {
        res.exact = exact_enumeration(cfg.n, cfg.F, cfg.canonical ? res.theta : 0.0);
    }

    // Summary document.
    using nlohmann::json;
    json& s = res.summary;
    s["seed"] = res.seed;
    s["config"] = cfg.source;
    s["subgraph"] = {{"name", cfg.F.name()}, {"m", cfg.F.m()}, {"k", cfg.F.k()}, {"d", cfg.F.d()}};
    if (cfg.canonical) s["theta"] = res.theta;
    json chains = json::array();
    for (std::size_t c = 0; c < res.chains.size(); ++c) {
        const ChainStats& r = res.chains[c];
        json jc = {{"seed", res.chain_configs[c].seed},
                   {"acceptance_rate", r.acceptance_rate()},
                   {"samples", r.step.size()},
                   {"edge_density", {{"mean", r.edge_density_summary.mean}, {"se", r.edge_density_summary.std_error}}},
                   {"t_F", {{"mean", r.t_F_summary.mean}, {"se", r.t_F_summary.std_error}}}};
        if (cfg.record_lambda) jc["lambda_over_n"] = {{"mean", r.lambda_summary.mean}, {"se", r.lambda_summary.std_error}};
        if (r.init_attempts) jc["init_attempts"] = r.init_attempts;
        chains.push_back(jc);
    }
    s["chains"] = chains;
    const PooledMean pd = pool(res.chains, &ChainStats::edge_density_summary);
    const PooledMean pt = pool(res.chains, &ChainStats::t_F_summary);
    s["pooled"] = {{"edge_density", {{"mean", pd.mean}, {"se", pd.std_error}}},
                   {"t_F", {{"mean", pt.mean}, {"se", pt.std_error}}}};
    std::optional<PooledMean> pl;
    if (cfg.record_lambda) {
        pl = pool(res.chains, &ChainStats::lambda_summary);
        s["pooled"]["lambda_over_n"] = {{"mean", pl->mean}, {"se", pl->std_error}};
    }
    s["histogram"] = {{"bins", cfg.histogram_bins}, {"counts", res.histogram}};
    s["modes"] = res.modes;

    if (res.exact) {
        const EnumerationResult& e = *res.exact;
        json je = {{"graphs", e.graphs}};
        // The 1e-12 floor absorbs summation roundoff when a trace is constant.
        const auto agree = [](const PooledMean& m, double exact) {
            const double tol = 3.0 * m.std_error + 1e-12 * std::max(1.0, std::abs(exact));
            return json{{"exact", exact}, {"chain", m.mean}, {"se", m.std_error},
                        {"within_3se", std::abs(m.mean - exact) <= tol}};
        };
        if (cfg.canonical) {
            je["psi_n"] = e.psi_n;
            je["t_F"] = agree(pt, e.mean_t_F);
            je["edge_density"] = agree(pd, e.mean_edge_density);
            if (pl) je["lambda_over_n"] = agree(*pl, e.mean_lambda_over_n);
        } else {
            // Uniform law on the window slab, assembled from exact fibers.
            const double w = cfg.window.value_or(2.0 / cfg.n);
            double cnt = 0.0, t = 0.0, dens = 0.0, lam = 0.0;
            for (const auto& [h, f] : e.fibers) {
                if (std::abs(f.t_F - cfg.t_star) > w) continue;
                cnt += double(f.count);
                t += double(f.count) * f.t_F;
                dens += double(f.count) * f.mean_edge_density;
                lam += double(f.count) * f.mean_lambda_over_n;
            }
            je["window_graphs"] = cnt;
            if (cnt > 0) {
                je["t_F"] = agree(pt, t / cnt);
                je["edge_density"] = agree(pd, dens / cnt);
                if (pl) je["lambda_over_n"] = agree(*pl, lam / cnt);
            }
        }
        s["exact"] = je;
    }

    if (cfg.bimodality && res.predicted) {
        const StationaryProfile& p = *res.predicted;
        json jb = {{"modes", res.modes}, {"bimodal", res.modes.size() >= 2}};
        std::vector<double> predicted;
        if (p.first) predicted.push_back(p.first->u);
        if (p.second) predicted.push_back(p.second->u);
        jb["predicted"] = predicted;
        json dist = json::array();
        for (double u : predicted) {
            double best = 1.0;
            for (double m : res.modes) best = std::min(best, std::abs(m - u));
            dist.push_back(best);
        }
        jb["nearest_mode_distance"] = dist;
        s["bimodality"] = jb;
    }
    return res;
}

} // namespace bee
