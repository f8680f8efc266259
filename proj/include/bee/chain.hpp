#pragma once

// Single-edge-toggle Metropolis chains for the canonical ensemble
// P(G) ~ exp(n^2 theta t(F,G)) and for a window relaxation of the
// microcanonical ensemble (uniform on {G : |t(F,G) - T*| <= window}).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "bee/errors.hpp"
#include "bee/graph.hpp"
#include "bee/homomorphism.hpp"
#include "bee/rng.hpp"
#include "bee/spectral.hpp"

namespace bee {

struct Canonical {
    double theta;
};

struct Microcanonical {
    double T_star;
    double window = 0.0;  // half-width; 0 selects the default 2/n
};

using EnsembleMode = std::variant<Canonical, Microcanonical>;

struct ChainConfig {
    int n = 0;
    SubgraphSpec F = SubgraphSpec::edge();
    EnsembleMode mode = Canonical{0.0};
    // All three counted in single-toggle proposals.
    std::int64_t sweeps = 0;
    std::int64_t burn_in = 0;
    std::int64_t thinning = 1;
    std::uint64_t seed = 0;
    // Edge probability of the Erdos-Renyi starting graph. Defaults: 1/2 for
    // canonical chains, T*^(1/k) for microcanonical ones.
    std::optional<double> init_density;
    bool record_lambda = true;
    bool log_proposals = false;
    int histogram_bins = 100;
    std::int64_t max_init_attempts = 1000000;

    /// Chain lengths 2000, 200 and 1 sweeps of n(n-1)/2 proposals.
    static ChainConfig with_defaults(int n, SubgraphSpec F, EnsembleMode mode, std::uint64_t seed) {
        ChainConfig c;
        c.n = n;
        c.F = std::move(F);
        c.mode = mode;
        const std::int64_t pairs = std::int64_t(n) * (n - 1) / 2;
        c.sweeps = 2000 * pairs;
        c.burn_in = 200 * pairs;
        c.thinning = pairs;
        c.seed = seed;
        if (auto* m = std::get_if<Microcanonical>(&c.mode); m && !(m->window > 0.0)) {
            m->window = 2.0 / n;
        }
        return c;
    }

    std::vector<std::string> problems() const {
        std::vector<std::string> out;
        if (n < 2) out.emplace_back("n must be >= 2");
        if (sweeps <= 0) out.emplace_back("sweeps must be positive");
        if (burn_in < 0 || burn_in >= sweeps) out.emplace_back("burn_in must lie in [0, sweeps)");
        if (thinning <= 0) out.emplace_back("thinning must be positive");
        if (histogram_bins <= 0) out.emplace_back("histogram_bins must be positive");
        if (init_density && !(*init_density >= 0.0 && *init_density <= 1.0)) {
            out.emplace_back("init_density must lie in [0,1]");
        }
        if (auto* m = std::get_if<Microcanonical>(&mode)) {
            if (!(m->window > 0.0)) out.emplace_back("window must be > 0");
            if (!(m->T_star > 0.0 && m->T_star < 1.0)) out.emplace_back("t_star must lie in (0,1)");
        } else if (!std::isfinite(std::get<Canonical>(mode).theta)) {
            out.emplace_back("theta must be finite");
        }
        return out;
    }

    void validate() const {
        const auto p = problems();
        if (p.empty()) return;
        std::string msg = "invalid chain config:";
        for (const auto& s : p) msg += " " + s + ";";
        throw InputError(msg);
    }
};

struct TraceSummary {
    double mean = 0.0;
    double std_error = 0.0;  // batch means, 20 batches
};

struct ProposalRecord {
    int i;
    int j;
    double delta_t;
    double acceptance;  // min(1, exp(n^2 theta delta_t)) or the window indicator
    bool accepted;
};

struct ChainStats {
    std::vector<std::int64_t> step;
    std::vector<double> edge_density;
    std::vector<double> t_F;
    std::vector<double> lambda_over_n;  // empty unless record_lambda
    TraceSummary edge_density_summary;
    TraceSummary t_F_summary;
    TraceSummary lambda_summary;
    std::vector<std::uint64_t> histogram;  // edge density over [0,1]
    std::int64_t proposed = 0;
    std::int64_t accepted = 0;
    std::int64_t init_attempts = 0;
    std::vector<ProposalRecord> proposals;
    SimpleGraph final_graph;

    double acceptance_rate() const { return proposed ? double(accepted) / double(proposed) : 0.0; }
};

inline TraceSummary summarize(const std::vector<double>& x, std::size_t batches = 20) {
    TraceSummary s;
    if (x.empty()) return s;
    double sum = 0.0;
    for (double v : x) sum += v;
    s.mean = sum / double(x.size());
    batches = std::min(batches, x.size());
    if (batches < 2) return s;
    const std::size_t size = x.size() / batches;
    std::vector<double> means;
    for (std::size_t b = 0; b < batches; ++b) {
        double m = 0.0;
        for (std::size_t i = b * size; i < (b + 1) * size; ++i) m += x[i];
        means.push_back(m / double(size));
    }
    double grand = 0.0;
    for (double m : means) grand += m;
    grand /= double(batches);
    double var = 0.0;
    for (double m : means) var += (m - grand) * (m - grand);
    var /= double(batches - 1);
    s.std_error = std::sqrt(var / double(batches));
    return s;
}

inline SimpleGraph sample_erdos_renyi(int n, double p, Rng& rng) {
    SimpleGraph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.bernoulli(p)) g.toggle(i, j);
    return g;
}

inline ChainStats run_chain(const ChainConfig& cfg) {
    cfg.validate();
    const int n = cfg.n;
    const HomCounter counter(cfg.F);
    const double norm = counter.norm(n);
    const double n2 = double(n) * n;
    Rng rng(cfg.seed);
    ChainStats st;

    const auto* micro = std::get_if<Microcanonical>(&cfg.mode);
    const double p0 = cfg.init_density.value_or(
        micro ? std::pow(micro->T_star, 1.0 / cfg.F.k()) : 0.5);
    SimpleGraph g = sample_erdos_renyi(n, p0, rng);
    std::int64_t hom = counter.count(g);

    const auto draw_pair = [&](int& i, int& j) {
        i = int(rng.below(std::uint64_t(n)));
        j = int(rng.below(std::uint64_t(n - 1)));
        if (j >= i) ++j;
    };

    if (micro) {
        // Greedy descent of |t - T*| until the window is entered.
        const auto dist = [&](std::int64_t h) { return std::abs(double(h) / norm - micro->T_star); };
        while (dist(hom) > micro->window) {
            if (st.init_attempts++ >= cfg.max_init_attempts) {
                throw ConvergenceError("microcanonical init: window |t - " +
                                       std::to_string(micro->T_star) + "| <= " +
                                       std::to_string(micro->window) + " not reached after " +
                                       std::to_string(cfg.max_init_attempts) + " toggles");
            }
            int i, j;
            draw_pair(i, j);
            const std::int64_t d = counter.delta(g, i, j);
            if (dist(hom + d) < dist(hom)) {
                g.toggle(i, j);
                hom += d;
            }
        }
    }

    const double theta = micro ? 0.0 : std::get<Canonical>(cfg.mode).theta;
    const auto bins = std::size_t(cfg.histogram_bins);
    st.histogram.assign(bins, 0);
    for (std::int64_t s = 1; s <= cfg.sweeps; ++s) {
        int i, j;
        draw_pair(i, j);
        const std::int64_t d = counter.delta(g, i, j);
        const double dt = double(d) / norm;
        double a;
        if (micro) {
            a = std::abs(double(hom + d) / norm - micro->T_star) <= micro->window ? 1.0 : 0.0;
        } else {
            a = std::min(1.0, std::exp(n2 * theta * dt));
        }
        const bool accept = rng.uniform() < a;
        ++st.proposed;
        if (accept) {
            g.toggle(i, j);
            hom += d;
            ++st.accepted;
        }
        if (cfg.log_proposals) st.proposals.push_back({i, j, dt, a, accept});
        if (s > cfg.burn_in && (s - cfg.burn_in) % cfg.thinning == 0) {
            const double dens = g.edge_density();
            st.step.push_back(s);
            st.edge_density.push_back(dens);
            st.t_F.push_back(double(hom) / norm);
            if (cfg.record_lambda) st.lambda_over_n.push_back(largest_eigenvalue(g) / n);
            st.histogram[std::min(bins - 1, std::size_t(dens * double(bins)))]++;
        }
    }
    st.edge_density_summary = summarize(st.edge_density);
    st.t_F_summary = summarize(st.t_F);
    st.lambda_summary = summarize(st.lambda_over_n);
    st.final_graph = std::move(g);
    return st;
}

/// Independent chains in parallel; results in input order.
inline std::vector<ChainStats> run_chains(const std::vector<ChainConfig>& cfgs) {
    std::vector<ChainStats> out(cfgs.size());
    std::vector<std::exception_ptr> errs(cfgs.size());
    {
        std::vector<std::jthread> pool;
        for (std::size_t c = 0; c < cfgs.size(); ++c) {
            pool.emplace_back([&, c] {
                try {
                    out[c] = run_chain(cfgs[c]);
                } catch (...) {
                    errs[c] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errs) if (e) std::rethrow_exception(e);
    return out;
}

/// Prominent local maxima of a histogram, as bin-centre locations in [0,1]:
/// the histogram is smoothed with a (2 radius + 1) moving average, peaks below
/// min_height of the tallest are dropped, and of two peaks not separated by a
/// dip below half the lower one only the taller is kept.
inline std::vector<double> histogram_modes(const std::vector<std::uint64_t>& counts,
                                           int radius = 2, double min_height = 0.05) {
    const int b = int(counts.size());
    std::vector<double> sm(b, 0.0);
    for (int i = 0; i < b; ++i) {
        double s = 0.0;
        int c = 0;
        for (int j = std::max(0, i - radius); j <= std::min(b - 1, i + radius); ++j, ++c) s += double(counts[j]);
        sm[i] = s / c;
    }
    const double top = b ? *std::max_element(sm.begin(), sm.end()) : 0.0;
    if (top <= 0.0) return {};
    std::vector<int> peaks;
    for (int i = 0; i < b; ++i) {
        const double l = i > 0 ? sm[i - 1] : -1.0;
        const double r = i + 1 < b ? sm[i + 1] : -1.0;
        if (sm[i] >= l && sm[i] > r && sm[i] >= min_height * top) peaks.push_back(i);
    }
    std::vector<int> kept;
    for (int p : peaks) {
        if (!kept.empty()) {
            const int q = kept.back();
            const double dip = *std::min_element(sm.begin() + q, sm.begin() + p + 1);
            if (dip >= 0.5 * std::min(sm[p], sm[q])) {
                if (sm[p] > sm[q]) kept.back() = p;
                continue;
            }
        }
        kept.push_back(p);
    }
    std::vector<double> out;
    for (int p : kept) out.push_back((p + 0.5) / double(b));
    return out;
}

} // namespace bee
