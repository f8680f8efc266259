// beectl: phase diagrams, limiting curves, objective profiles and ensemble
// simulations from the command line.
//
// Exit codes: 0 success, 1 domain or numerical error, 2 usage or config error.

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bee/io.hpp"
#include "bee/phase.hpp"
#include "bee/pivot.hpp"
#include "bee/simulation.hpp"
#include "bee/variational.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Run {
    std::string subcommand;
    std::vector<std::string> args;  // argv after the program name, for replay
    json parameters;
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> outputs;
};

std::string utc_now() {
    const std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

void write_text(const fs::path& p, const std::string& text, Run& run) {
    auto f = bee::io::open_out(p);
    f << text;
    run.outputs.push_back(p.string());
}

void write_manifest(const fs::path& dir, const Run& run, double seconds) {
    json m = {{"tool", "beectl"},
              {"version", kVersion},
              {"subcommand", run.subcommand},
              {"args", run.args},
              {"parameters", run.parameters},
              {"seeds", run.seeds},
              {"outputs", run.outputs},
              {"started_at", utc_now()},
              {"wall_clock_seconds", seconds}};
    auto f = bee::io::open_out(dir / "manifest.json");
    f << m.dump(2) << '\n';
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double parse_double(const std::string& s, const char* what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty()) throw UsageError(std::string("bad value for ") + what + ": '" + s + "'");
    return v;
}

// --- phase-diagram --------------------------------------------------------

struct PhaseArgs {
    double k_min = 4.592;
    double k_max = 8.0;
    double step = 0.002;
};

void cmd_phase_diagram(const PhaseArgs& a, const fs::path& out, Run& run) {
    if (!(a.step > 0.0)) throw UsageError("--step must be > 0");
    if (a.k_min > a.k_max) throw UsageError("empty grid: --k-min exceeds --k-max");
    run.parameters = {{"k_min", a.k_min}, {"k_max", a.k_max}, {"step", a.step}};
    const bee::PhaseDiagram pd = bee::critical_curve(a.k_min, a.k_max, a.step);
    std::ostringstream csv;
    bee::io::write_phase_csv(csv, pd);
    write_text(out / "phase.csv", csv.str(), run);
    const json pv = {{"k0", pd.pivot.k0}, {"T0", pd.pivot.T0}, {"theta_hat_k0", bee::theta_hat_at_pivot()}};
    write_text(out / "pivot.json", pv.dump(2) + "\n", run);
    std::cout << "phase.csv: " << pd.rows.size() << " rows; k0=" << pd.pivot.k0 << " T0=" << pd.pivot.T0 << '\n';
}

// --- curves -----------------------------------------------------------------

struct CurvesArgs {
    double k = 7.0;
    double d = 5.0;
    std::string grid;
    std::string t_star;
};

void cmd_curves(const CurvesArgs& a, const fs::path& out, Run& run) {
    if (!(a.d >= 1.0 && a.d <= a.k)) throw UsageError("--d must lie in [1, k]");
    std::vector<double> Ts;
    if (!a.t_star.empty()) {
        for (const auto& s : split_list(a.t_star)) Ts.push_back(parse_double(s, "--t-star"));
    } else {
        const std::string g = a.grid.empty() ? bee::io::fmt(std::pow(0.5, a.k)) + ":0.999:400" : a.grid;
        const auto parsed = bee::io::parse_grid(g);
        if (!parsed) throw UsageError("--grid expects LO:HI[:N], got '" + g + "'");
        Ts = *parsed;
    }
    run.parameters = {{"k", a.k}, {"d", a.d}, {"t_star", Ts}};
    const bee::PhaseModel model(a.k, a.d);
    if (!model.bee()) throw bee::DomainError("curves: k=" + bee::io::fmt(a.k) + " has no BEE phase");

    std::ostringstream csv;
    csv << bee::io::curves_header << '\n';
    const double lo = std::pow(0.5, a.k);
    std::size_t skipped = 0;
    for (double T : Ts) {
        if (!(T >= lo && T < 1.0)) {
            csv << bee::io::fmt(T) << ",,,,,OUT_OF_SCOPE\n";
            ++skipped;
            continue;
        }
        const auto rows = bee::eigenvalue_curves(a.k, a.d, {T});
        std::ostringstream line;
        bee::io::write_curves_csv(line, rows);
        const std::string s = line.str();
        csv << s.substr(s.find('\n') + 1);
    }
    write_text(out / "curves.csv", csv.str(), run);
    const bee::BeeInterval& b = *model.bee();
    std::cout << "curves.csv: " << Ts.size() << " rows (" << skipped << " out of scope); BEE interval ("
              << b.T1 << ", " << b.T2 << ")\n";
}

// --- objective -------------------------------------------------------------

struct ObjectiveArgs {
    double k = 7.0;
    std::string thetas = "0.3,hat,0.4";
    std::string grid = "0:1:1001";
};

void cmd_objective(const ObjectiveArgs& a, const fs::path& out, Run& run) {
    if (!(a.k >= 1.0)) throw bee::DomainError("objective: k must be >= 1");
    const auto u_grid = bee::io::parse_grid(a.grid);
    if (!u_grid || u_grid->front() < 0.0 || u_grid->back() > 1.0) {
        throw UsageError("--grid expects LO:HI[:N] inside [0,1], got '" + a.grid + "'");
    }
    std::vector<double> thetas;
    for (const auto& s : split_list(a.thetas)) {
        thetas.push_back(s == "hat" ? bee::find_theta_hat(a.k).theta_hat : parse_double(s, "--theta"));
    }
    if (thetas.empty()) throw UsageError("--theta needs at least one value");
    run.parameters = {{"k", a.k}, {"theta", thetas}, {"grid", a.grid}};

    std::ostringstream samples, maxima;
    samples << "theta,u,l\n";
    maxima << "theta,label,u,value,global,residual\n";
    for (double th : thetas) {
        const bee::ObjectiveParams p{th, a.k};
        p.validate();
        for (double u : *u_grid) samples << bee::io::fmt(th) << ',' << bee::io::fmt(u) << ',' << bee::io::fmt(bee::objective(u, p)) << '\n';
        const bee::StationaryProfile prof = bee::find_local_maxima(p);
        const auto emit = [&](const char* label, const bee::LocalMax& m, bool global) {
            const double res = std::abs(bee::first_order_logit(m.logit, p));
            maxima << bee::io::fmt(th) << ',' << label << ',' << bee::io::fmt(m.u) << ',' << bee::io::fmt(m.value)
                   << ',' << (global ? 1 : 0) << ',' << bee::io::fmt(res) << '\n';
        };
        const bool both = prof.global == bee::GlobalMax::Both;
        if (prof.first) emit("u1", *prof.first, both || prof.global == bee::GlobalMax::U1);
        if (prof.second) emit("u2", *prof.second, both || prof.global == bee::GlobalMax::U2);
    }
    write_text(out / "objective.csv", samples.str(), run);
    write_text(out / "maxima.csv", maxima.str(), run);
    std::cout << "objective.csv: " << thetas.size() << " profiles of " << u_grid->size() << " points\n";
}

// --- simulate --------------------------------------------------------------

void cmd_simulate(const std::string& config_path, std::optional<std::uint64_t> seed, const fs::path& out, Run& run) {
    std::ifstream in(config_path);
    if (!in) throw UsageError("cannot read config '" + config_path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw bee::InputError("config '" + config_path + "' is not valid JSON: " + e.what());
    }
    bee::SimulationConfig cfg = bee::parse_simulation_config(j);
    if (seed) cfg.seed = seed;
    const bee::SimulationResult res = bee::run_simulation(cfg);
    run.seeds.push_back(res.seed);
    for (const auto& c : res.chain_configs) run.seeds.push_back(c.seed);
    run.parameters = {{"config", j}, {"config_path", config_path}, {"seed", res.seed}};
    if (!cfg.seed) run.args.insert(run.args.end(), {"--seed", std::to_string(res.seed)});

    for (std::size_t c = 0; c < res.chains.size(); ++c) {
        const bee::ChainStats& st = res.chains[c];
        std::ostringstream csv;
        csv << bee::io::trace_header << '\n';
        for (std::size_t i = 0; i < st.step.size(); ++i) {
            csv << st.step[i] << ',' << bee::io::fmt(st.edge_density[i]) << ',' << bee::io::fmt(st.t_F[i]) << ',';
            if (!st.lambda_over_n.empty()) csv << bee::io::fmt(st.lambda_over_n[i]);
            csv << '\n';
        }
        char name[32];
        std::snprintf(name, sizeof name, "trace_%03zu.csv", c);
        write_text(out / name, csv.str(), run);
    }
    write_text(out / "summary.json", res.summary.dump(2) + "\n", run);
    std::cout << res.summary["pooled"].dump() << '\n';
    if (res.summary.contains("exact")) std::cout << "exact: " << res.summary["exact"].dump() << '\n';
    if (res.summary.contains("bimodality")) std::cout << "bimodality: " << res.summary["bimodality"].dump() << '\n';
}

int dispatch(int argc, char** argv);

// replay: rerun a manifest's recorded arguments, optionally into another directory.
int replay(const std::string& manifest_path, const std::string& out_override) {
    std::ifstream in(manifest_path);
    if (!in) throw UsageError("cannot read manifest '" + manifest_path + "'");
    const json m = json::parse(in);
    std::vector<std::string> args{"beectl"};
    for (const auto& a : m.at("args")) args.push_back(a.get<std::string>());
    if (!out_override.empty()) {
        bool replaced = false;
        for (std::size_t i = 1; i + 1 < args.size(); ++i) {
            if (args[i] == "--out") {
                args[i + 1] = out_override;
                replaced = true;
            }
        }
        if (!replaced) args.insert(args.end(), {"--out", out_override});
    }
    std::vector<char*> ptrs;
    for (auto& a : args) ptrs.push_back(a.data());
    return dispatch(int(ptrs.size()), ptrs.data());
}

int dispatch(int argc, char** argv) {
    CLI::App app{"Ensemble equivalence for dense graphs with a subgraph-density constraint"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    std::string out = ".";
    const auto add_out = [&](CLI::App* sub) { sub->add_option("--out", out, "Output directory")->capture_default_str(); };

    PhaseArgs pa;
    auto* phase = app.add_subcommand("phase-diagram", "Critical curve rows k,T1,T2 and the pivot (k0, T0)");
    phase->add_option("--k-min", pa.k_min, "First k of the grid")->capture_default_str();
    phase->add_option("--k-max", pa.k_max, "Last k of the grid")->capture_default_str();
    phase->add_option("--step", pa.step, "Grid spacing in k")->capture_default_str();
    add_out(phase);

    CurvesArgs ca;
    auto* curves = app.add_subcommand("curves", "Limiting eigenvalue, relative entropy and gap curves in T*");
    curves->add_option("--k", ca.k, "Edge count of F")->capture_default_str();
    curves->add_option("--d", ca.d, "Maximum degree of F")->capture_default_str();
    curves->add_option("--grid", ca.grid, "T* grid LO:HI[:N] (default (1/2)^k:0.999:400)");
    curves->add_option("--t-star", ca.t_star, "Comma-separated T* values instead of a grid");
    add_out(curves);

    ObjectiveArgs oa;
    auto* obj = app.add_subcommand("objective", "Samples of theta u^k - I(u) with its local maximisers");
    obj->add_option("--k", oa.k, "Exponent k")->capture_default_str();
    obj->add_option("--theta", oa.thetas, "Comma-separated multipliers; 'hat' is the critical one")->capture_default_str();
    obj->add_option("--grid", oa.grid, "u grid LO:HI[:N]")->capture_default_str();
    add_out(obj);

    std::string config;
    std::optional<std::uint64_t> seed;
    auto* sim = app.add_subcommand("simulate", "Run chains (and exact enumeration when n <= 6) from a JSON config");
    sim->add_option("--config", config, "Simulation config (JSON)")->required();
    sim->add_option("--seed", seed, "Master seed; overrides the config");
    add_out(sim);

    std::string manifest;
    auto* rep = app.add_subcommand("replay", "Rerun the command recorded in a manifest.json");
    rep->add_option("--manifest", manifest, "Manifest to replay")->required();
    rep->add_option("--out", out, "Output directory (defaults to the recorded one)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (*rep) return replay(manifest, rep->count("--out") ? out : std::string());

    Run run;
    run.args.assign(argv + 1, argv + argc);
    const auto t0 = std::chrono::steady_clock::now();
    const fs::path dir(out);
    if (*phase) {
        run.subcommand = "phase-diagram";
        cmd_phase_diagram(pa, dir, run);
    } else if (*curves) {
        run.subcommand = "curves";
        cmd_curves(ca, dir, run);
    } else if (*obj) {
        run.subcommand = "objective";
        cmd_objective(oa, dir, run);
    } else {
        run.subcommand = "simulate";
        cmd_simulate(config, seed, dir, run);
    }
    write_manifest(dir, run, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const bee::InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const bee::DomainError& e) {
        std::cerr << "domain error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
