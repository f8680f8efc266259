#pragma once

// Exact sums over all 2^(n choose 2) graphs for n <= 6: the finite-n pressure
// psi_n(theta), canonical means, and microcanonical fibers {G : hom(F,G) = h}.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <thread>
#include <vector>

#include "bee/errors.hpp"
#include "bee/graph.hpp"
#include "bee/homomorphism.hpp"
#include "bee/spectral.hpp"

namespace bee {

namespace detail {

// Neumaier-compensated accumulator.
struct CompensatedSum {
    double sum = 0.0;
    double c = 0.0;
    void add(double x) {
        const double t = sum + x;
        c += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    void add(const CompensatedSum& o) {
        add(o.sum);
        add(o.c);
    }
    double value() const { return sum + c; }
};

} // namespace detail

struct FiberStats {
    std::uint64_t count = 0;
    double t_F = 0.0;             // common value of t(F, G) on the fiber
    double mean_edge_density = 0.0;
    double mean_lambda_over_n = 0.0;
};

struct EnumerationResult {
    int n;
    double theta;
    double psi_n;                 // (1/n^2) log sum_G exp(n^2 theta t(F,G))
    double mean_t_F;              // canonical expectations at theta
    double mean_edge_density;
    double mean_lambda_over_n;
    double var_t_F;
    std::uint64_t graphs;
    std::map<std::int64_t, FiberStats> fibers;  // keyed by hom(F, G)

    /// Microcanonical fiber whose density is closest to T*.
    const FiberStats& nearest_fiber(double T_star) const {
        const FiberStats* best = nullptr;
        for (const auto& [h, f] : fibers) {
            if (!best || std::abs(f.t_F - T_star) < std::abs(best->t_F - T_star)) best = &f;
        }
        return *best;
    }
};

inline SimpleGraph graph_from_mask(int n, std::uint64_t mask) {
    SimpleGraph g(n);
    int bit = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++bit)
            if (mask >> bit & 1u) g.toggle(i, j);
    return g;
}

inline EnumerationResult exact_enumeration(int n, const SubgraphSpec& F, double theta) {
    if (n < 1) throw InputError("exact_enumeration: n must be >= 1");
    if (n > 6) throw ResourceError("exact_enumeration: n=" + std::to_string(n) + " exceeds 6");
    const int pairs = n * (n - 1) / 2;
    const std::uint64_t total = std::uint64_t(1) << pairs;
    const double n2 = double(n) * n;
    const HomCounter counter(F);
    const double norm = counter.norm(n);
    // Homomorphism density is monotone under adding edges, so the complete graph
    // carries the largest exponent for theta >= 0 and the empty graph for theta < 0.
    // Shifting by that exponent keeps every weight in (0, 1].
    const double t_complete = double(counter.count(graph_from_mask(n, total - 1))) / norm;
    const double shift = theta >= 0.0 ? n2 * theta * t_complete : 0.0;

    struct Partial {
        detail::CompensatedSum w, wt, wt2, wd, wl;
        std::map<std::int64_t, FiberStats> fibers;
    };
    const std::size_t chunks = 64;
    std::vector<Partial> parts(chunks);
    const auto work = [&](std::size_t c) {
        Partial& p = parts[c];
        const std::uint64_t lo = total * c / chunks;
        const std::uint64_t hi = total * (c + 1) / chunks;
        for (std::uint64_t mask = lo; mask < hi; ++mask) {
            const SimpleGraph g = graph_from_mask(n, mask);
            const std::int64_t h = counter.count(g);
            const double t = double(h) / norm;
            const double dens = g.edge_density();
            const double lam = largest_eigenvalue(g) / n;
            const double w = std::exp(n2 * theta * t - shift);
            p.w.add(w);
            p.wt.add(w * t);
            p.wt2.add(w * t * t);
            p.wd.add(w * dens);
            p.wl.add(w * lam);
            FiberStats& f = p.fibers[h];
            ++f.count;
            f.t_F = t;
            f.mean_edge_density += dens;
            f.mean_lambda_over_n += lam;
        }
    };
    {
        const std::size_t workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t c = w; c < chunks; c += workers) work(c);
            });
        }
    }
    // Fixed-order reduction keeps the result independent of scheduling.
    Partial all;
    for (const Partial& p : parts) {
        all.w.add(p.w);
        all.wt.add(p.wt);
        all.wt2.add(p.wt2);
        all.wd.add(p.wd);
        all.wl.add(p.wl);
        for (const auto& [h, f] : p.fibers) {
            FiberStats& g = all.fibers[h];
            g.count += f.count;
            g.t_F = f.t_F;
            g.mean_edge_density += f.mean_edge_density;
            g.mean_lambda_over_n += f.mean_lambda_over_n;
        }
    }
    for (auto& [h, f] : all.fibers) {
        f.mean_edge_density /= double(f.count);
        f.mean_lambda_over_n /= double(f.count);
    }
    const double Z = all.w.value();
    EnumerationResult r;
    r.n = n;
    r.theta = theta;
    r.psi_n = (shift + std::log(Z)) / n2;
    r.mean_t_F = all.wt.value() / Z;
    r.var_t_F = std::max(0.0, all.wt2.value() / Z - r.mean_t_F * r.mean_t_F);
    r.mean_edge_density = all.wd.value() / Z;
    r.mean_lambda_over_n = all.wl.value() / Z;
    r.graphs = total;
    r.fibers = std::move(all.fibers);
    return r;
}

} // namespace bee
