#pragma once

// Scalar variational problem sup_u [theta u^k - I(u)]: local maximisers, the
// critical multiplier at which the global maximiser jumps, and the limiting
// pressure.
//
// Everything is computed in the logit coordinate s = log(u / (1-u)). The
// first-order condition theta k u^(k-1) = 1/2 log(u/(1-u)) becomes
//     g(s) = theta k sigma(s)^(k-1) - s/2 = 0,
// which stays well conditioned when the upper maximiser sits within 1e-12 of
// u = 1 (k around 40 and above).

#include <cmath>
#include <optional>
#include <string>

#include "bee/bisect.hpp"
#include "bee/entropy.hpp"
#include "bee/errors.hpp"
#include "bee/pivot.hpp"

namespace bee {

struct Tolerances {
    static constexpr double root = 1e-12;
    static constexpr double tie = 1e-10;
    static constexpr double k = 1e-6;
};

struct ObjectiveParams {
    double theta = 0.0;
    double k = 1.0;

    void validate() const {
        if (!(theta >= 0.0) || !std::isfinite(theta)) {
            throw DomainError("theta must be finite and >= 0, got " + std::to_string(theta));
        }
        if (!(k >= 1.0) || !std::isfinite(k)) {
            throw DomainError("k must be finite and >= 1, got " + std::to_string(k));
        }
    }
};

/// A local maximiser of l_{theta,k}, kept in both coordinates.
struct LocalMax {
    double u;
    double logit;
    double value;

    /// 1 - u to full relative precision.
    double complement() const { return sigmoid(-logit); }
    /// u^k.
    double power(double k) const { return std::exp(k * log_sigmoid(logit)); }
    /// 1 - u^k to full relative precision.
    double power_complement(double k) const { return -std::expm1(k * log_sigmoid(logit)); }
};

enum class GlobalMax { U1, U2, Both };

inline const char* to_string(GlobalMax g) {
    switch (g) {
    case GlobalMax::U1: return "U1";
    case GlobalMax::U2: return "U2";
    case GlobalMax::Both: return "BOTH";
    }
    return "?";
}

/// Local maximisers u1 < u2 (either may be absent, not both).
struct StationaryProfile {
    std::optional<LocalMax> first;
    std::optional<LocalMax> second;
    GlobalMax global = GlobalMax::U1;

    bool bimodal() const { return first.has_value() && second.has_value(); }
    int count() const { return int(first.has_value()) + int(second.has_value()); }

    const LocalMax& global_max() const {
        if (!second) return *first;
        if (!first) return *second;
        return global == GlobalMax::U1 ? *first : *second;
    }
};

inline double objective(double u, const ObjectiveParams& p) {
    return p.theta * std::pow(u, p.k) - bernoulli_entropy(u);
}

inline double objective_logit(double s, const ObjectiveParams& p) {
    return p.theta * std::exp(p.k * log_sigmoid(s)) - bernoulli_entropy_logit(s);
}

/// l'_{theta,k}(u) = theta k u^(k-1) - 1/2 log(u/(1-u)).
inline double objective_derivative(double u, const ObjectiveParams& p) {
    return p.theta * p.k * std::pow(u, p.k - 1.0) - 0.5 * logit(u);
}

// First-order residual in the logit coordinate.
inline double first_order_logit(double s, const ObjectiveParams& p) {
    return p.theta * p.k * std::exp((p.k - 1.0) * log_sigmoid(s)) - 0.5 * s;
}

namespace detail {

inline double first_order_logit_slope(double s, const ObjectiveParams& p) {
    return p.theta * p.k * (p.k - 1.0) *
               std::exp((p.k - 1.0) * log_sigmoid(s) + log_sigmoid(-s)) -
           0.5;
}

inline LocalMax make_max(double s, const ObjectiveParams& p) {
    return {sigmoid(s), s, objective_logit(s, p)};
}

} // namespace detail

/// All local maximisers of l_{theta,k} on (0,1).
///
/// Every root has s >= 0 (u >= 1/2) and s <= 2 theta k. The slope g'(s) is
/// unimodal with its peak at u = (k-1)/k, so [0, s_max] splits into at most
/// three monotone pieces of g (down, up, down); each piece holds at most one
/// root, which bisection refines to machine precision. A maximiser lying
/// above (k-1)/k belongs to the upper branch and is reported as the second.
inline StationaryProfile find_local_maxima(const ObjectiveParams& p) {
    p.validate();
    StationaryProfile out;
    if (p.theta == 0.0) {
        out.first = LocalMax{0.5, 0.0, half_log2};
        return out;
    }
    const auto g = [&](double s) { return first_order_logit(s, p); };
    const auto gp = [&](double s) { return detail::first_order_logit_slope(s, p); };
    const double s_max = 2.0 * p.theta * p.k + 2.0;
    const BisectOptions opt{.x_tol = 0.0, .max_iter = 400};

    const double u_split = (p.k - 1.0) / p.k;
    const double s_peak = u_split > 0.5 ? logit(u_split) : 0.0;

    const auto single = [&](double lo, double hi) {
        const LocalMax m = detail::make_max(bisect_root(g, lo, hi, opt), p);
        if (u_split > 0.5 && m.logit > s_peak) {
            out.second = m;
            out.global = GlobalMax::U2;
        } else {
            out.first = m;
            out.global = GlobalMax::U1;
        }
    };

    if (s_peak >= s_max || gp(s_peak) <= 0.0) {
        single(0.0, s_max);
        return out;
    }
    // g' rises on [0, s_peak] and falls afterwards.
    const double a = gp(0.0) >= 0.0 ? 0.0 : bisect_root(gp, 0.0, s_peak, opt);
    const double b = gp(s_max) >= 0.0 ? s_max : bisect_root(gp, s_peak, s_max, opt);
    const double ga = g(a);
    const double gb = g(b);
    if (ga >= 0.0) {
        single(b, s_max);
    } else if (gb <= 0.0) {
        single(0.0, a);
    } else {
        out.first = detail::make_max(bisect_root(g, 0.0, a, opt), p);
        out.second = detail::make_max(bisect_root(g, b, s_max, opt), p);
        const double gap = out.second->value - out.first->value;
        out.global = std::abs(gap) <= Tolerances::tie ? GlobalMax::Both
                     : gap > 0.0                      ? GlobalMax::U2
                                                      : GlobalMax::U1;
    }
    return out;
}

/// psi_inf(theta) = sup_u [theta u^k - I(u)].
inline double psi_infinity(double theta, double k) {
    return find_local_maxima({theta, k}).global_max().value;
}

struct CriticalTheta {
    double k;
    double theta_hat;
    LocalMax u1;
    LocalMax u2;
};

namespace detail {

// True once the upper branch holds the global maximum.
inline bool upper_wins(const StationaryProfile& prof) {
    if (prof.bimodal()) return prof.second->value > prof.first->value;
    return prof.second.has_value();
}

} // namespace detail

/// Critical multiplier theta_hat(k): the unique theta at which the two local
/// maxima have equal height. Requires k > k0 + 1e-6.
inline CriticalTheta find_theta_hat(double k) {
    if (!(k > pivot().k0 + Tolerances::k) || !std::isfinite(k)) {
        throw DomainError("find_theta_hat: k=" + std::to_string(k) +
                          " must exceed k0 + tol_k (k0=" + std::to_string(pivot().k0) + ")");
    }
    const auto pred = [k](double theta) {
        return detail::upper_wins(find_local_maxima({theta, k}));
    };
    const double half_k = std::pow(0.5, k);
    double lo = (std::numbers::ln2 + std::log1p(-1.0 / k) + std::log(1.0 / (k - 1.0)) / k) /
                (2.0 * (1.0 - half_k));
    double hi = std::numbers::ln2 / (2.0 * (1.0 - half_k * (1.0 + k)));
    if (!(lo >= 0.0 && lo < hi) || pred(lo) || !pred(hi)) {
        lo = 0.0;
        hi = 10.0;
    }
    const Bracket br = bisect_predicate(pred, lo, hi, {.x_tol = 1e-13, .max_iter = 200});

    double best_gap = INFINITY;
    std::optional<CriticalTheta> best;
    for (double theta : {br.lo, br.hi}) {
        const StationaryProfile prof = find_local_maxima({theta, k});
        if (!prof.bimodal()) continue;
        const double gap = std::abs(prof.second->value - prof.first->value);
        if (gap < best_gap) {
            best_gap = gap;
            best = CriticalTheta{k, theta, *prof.first, *prof.second};
        }
    }
    if (!best || best_gap > Tolerances::tie) {
        throw ConvergenceError("find_theta_hat: two maxima of equal height not isolated at k=" +
                               std::to_string(k));
    }
    return *best;
}

} // namespace bee
