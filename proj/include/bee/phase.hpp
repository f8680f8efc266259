#pragma once

// Phase theory for a single homomorphism-density constraint: the BEE interval
// (T1(k), T2(k)), the critical curve, the Lagrange multiplier map, and the
// closed-form specific relative entropy and eigenvalue gap in the replica
// symmetric part of the BEE phase.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "bee/bisect.hpp"
#include "bee/entropy.hpp"
#include "bee/errors.hpp"
#include "bee/graph.hpp"
#include "bee/pivot.hpp"
#include "bee/variational.hpp"

namespace bee {

// J_k(x) = I(x^(1/k)) and its first two derivatives in x.
inline double entropy_of_root(double x, double k) {
    return bernoulli_entropy(std::pow(x, 1.0 / k));
}

inline double entropy_of_root_derivative(double x, double k) {
    const double u = std::pow(x, 1.0 / k);
    return bernoulli_entropy_derivative(u) * std::pow(u, 1.0 - k) / k;
}

inline double entropy_of_root_second_derivative(double x, double k) {
    const double u = std::pow(x, 1.0 / k);
    return std::pow(u, 1.0 - 2.0 * k) / (2.0 * k * k) *
           (1.0 / (1.0 - u) + (1.0 - k) * logit(u));
}

/// BEE interval (T1, T2) = (u1^k, u2^k) at the critical multiplier.
struct BeeInterval {
    double k;
    double theta_hat;
    double T1;
    double T2;
    double T2_complement;  // 1 - T2, full relative precision
    LocalMax u1;
    LocalMax u2;

    bool contains(double T) const { return T > T1 && (1.0 - T) > T2_complement; }
    double width() const { return T2 - T1; }
};

inline BeeInterval bee_interval(double k) {
    const CriticalTheta c = find_theta_hat(k);
    return {k, c.theta_hat, c.u1.power(k), c.u2.power(k), c.u2.power_complement(k), c.u1, c.u2};
}

// True when k is far enough above k0 for the BEE interval to be resolved.
inline bool has_bee_phase(double k) { return k > pivot().k0 + Tolerances::k; }

struct PhaseRow {
    double k;
    double T1;
    double T2;
};

struct PhaseDiagram {
    std::vector<PhaseRow> rows;
    Pivot pivot;
};

namespace detail {

template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
    const std::size_t workers = std::min(hw, std::max<std::size_t>(1, count / 16));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) fn(i);
        });
    }
}

} // namespace detail

/// Critical curve rows (k, T1(k), T2(k)) on k = k_min + i step, k <= k_max.
/// Rows are computed in parallel; their order is the grid order.
inline PhaseDiagram critical_curve(double k_min = 4.592, double k_max = 8.0, double step = 0.002) {
    if (!(step > 0.0) || !(k_max >= k_min)) {
        throw DomainError("critical_curve: need step > 0 and k_max >= k_min");
    }
    if (!has_bee_phase(k_min)) {
        throw DomainError("critical_curve: k_min=" + std::to_string(k_min) +
                          " must exceed k0 + tol_k");
    }
    const auto count = std::size_t(std::floor((k_max - k_min) / step + 1e-9)) + 1;
    PhaseDiagram out{std::vector<PhaseRow>(count), pivot()};
    detail::parallel_for(count, [&](std::size_t i) {
        const double k = k_min + double(i) * step;
        const BeeInterval b = bee_interval(k);
        out.rows[i] = {k, b.T1, b.T2};
    });
    return out;
}

/// Inverse of the critical curve: the k at which T* enters the BEE phase.
inline double k_c_of_T(double T_star) {
    if (!(T_star > 0.0 && T_star < 1.0)) {
        throw DomainError("k_c_of_T: T* must lie in (0,1)");
    }
    const Pivot& pv = pivot();
    if (std::abs(T_star - pv.T0) <= 1e-9) return pv.k0;
    const BisectOptions opt{.x_tol = 1e-9, .max_iter = 200};
    const double k_lo = pv.k0 + 2.0 * Tolerances::k;
    if (T_star < pv.T0) {
        // T1 decreases from T0 toward 0.
        const auto below = [T_star](double k) { return bee_interval(k).T1 < T_star; };
        if (below(k_lo)) return k_lo;
        double k_hi = std::max(pv.k0 + 1.0, std::log2(1.0 / T_star) + 2.0);
        while (!below(k_hi)) k_hi *= 2.0;
        return bisect_predicate(below, k_lo, k_hi, opt).mid();
    }
    // T2 increases from T0 toward 1; compare complements near 1.
    const double c = 1.0 - T_star;
    const auto above = [c](double k) { return bee_interval(k).T2_complement < c; };
    if (above(k_lo)) return k_lo;
    double k_hi = pv.k0 + 2.0;
    while (!above(k_hi)) k_hi *= 2.0;
    return bisect_predicate(above, k_lo, k_hi, opt).mid();
}

namespace detail {

inline void check_constraint_scope(double T_star, double k) {
    if (!(k >= 1.0)) throw DomainError("k must be >= 1");
    if (!(T_star >= std::pow(0.5, k) && T_star < 1.0)) {
        throw DomainError("T*=" + std::to_string(T_star) + " outside [(1/2)^k, 1) for k=" +
                          std::to_string(k) + "; the multiplier would be negative");
    }
}

// theta0 with (u*(theta0))^k = T*, by bisection on the monotone global maximiser.
inline double equivalence_multiplier(double T_star, double k) {
    const double c = 1.0 - T_star;
    const auto reached = [&](double theta) {
        const LocalMax m = find_local_maxima({theta, k}).global_max();
        return T_star > 0.5 ? m.power_complement(k) <= c : m.power(k) >= T_star;
    };
    if (reached(0.0)) return 0.0;
    double hi = 1.0;
    while (!reached(hi)) hi *= 2.0;
    return bisect_predicate(reached, 0.0, hi, {.x_tol = 0.0, .max_iter = 400}).mid();
}

} // namespace detail

/// Limiting Lagrange multiplier theta*(T*, k): the critical multiplier inside
/// the BEE interval, otherwise the theta0 whose global maximiser realises T*.
inline double lagrange_multiplier(double T_star, double k) {
    detail::check_constraint_scope(T_star, k);
    if (has_bee_phase(k)) {
        const BeeInterval b = bee_interval(k);
        if (b.contains(T_star)) return b.theta_hat;
    }
    return detail::equivalence_multiplier(T_star, k);
}

/// Union of up to two intervals; each end is open or closed.
struct Interval {
    double lo;
    double hi;
    bool lo_closed;
    bool hi_closed;

    bool contains(double x) const {
        return (lo_closed ? x >= lo : x > lo) && (hi_closed ? x <= hi : x < hi);
    }
};

struct IntervalUnion {
    std::vector<Interval> parts;
    bool empty() const { return parts.empty(); }
    bool contains(double x) const {
        return std::any_of(parts.begin(), parts.end(),
                           [x](const Interval& i) { return i.contains(x); });
    }
};

/// Part of the BEE phase of a subgraph with k edges and maximum degree d
/// where replica symmetry is known to hold:
///   (T1(k), T1(d)] U [T2(d), T2(k))  when d > k0,
///   (T1(k), T2(k))                   when d <= k0 < k,
///   empty                            when k <= k0 or d = k.
inline IntervalUnion replica_symmetric_bee_region(double k, double d) {
    if (!(d >= 1.0 && d <= k)) {
        throw InputError("replica_symmetric_bee_region: need 1 <= d <= k");
    }
    if (!has_bee_phase(k) || d == k) return {};
    const BeeInterval bk = bee_interval(k);
    if (!has_bee_phase(d)) return {{Interval{bk.T1, bk.T2, false, false}}};
    const BeeInterval bd = bee_interval(d);
    return {{Interval{bk.T1, bd.T1, false, true}, Interval{bd.T2, bk.T2, true, false}}};
}

inline IntervalUnion replica_symmetric_bee_region(const SubgraphSpec& F) {
    return replica_symmetric_bee_region(double(F.k()), double(F.d()));
}

enum class Regime { Equivalent, BeeReplicaSymmetric, BeeReplicaUnknown };

inline const char* to_string(Regime r) {
    switch (r) {
    case Regime::Equivalent: return "EQUIVALENT";
    case Regime::BeeReplicaSymmetric: return "BEE_REPLICA_SYMMETRIC";
    case Regime::BeeReplicaUnknown: return "BEE_RS_UNKNOWN";
    }
    return "?";
}

struct RegimeReport {
    double T_star;
    double k;
    double d;
    Regime regime;
    double theta_star;
    std::optional<double> s_inf;      // absent where replica symmetry may break
    std::optional<double> delta_inf;
};

/// Cached BEE data for one (k, d) pair; classifies constraint values.
class PhaseModel {
public:
    PhaseModel(double k, double d) : k_(k), d_(d) {
        if (!(k >= 1.0)) throw DomainError("PhaseModel: k must be >= 1");
        if (!(d >= 1.0 && d <= k)) throw InputError("PhaseModel: need 1 <= d <= k");
        if (has_bee_phase(k)) {
            bee_ = bee_interval(k);
            rs_ = replica_symmetric_bee_region(k, d);
        }
    }

    double k() const { return k_; }
    double d() const { return d_; }
    const std::optional<BeeInterval>& bee() const { return bee_; }
    const IntervalUnion& replica_symmetric_part() const { return rs_; }

    bool in_bee_phase(double T) const { return bee_ && bee_->contains(T); }

    /// Canonical mixture weights (p1, p2) on the two densities, p1 T1 + p2 T2 = T*.
    std::pair<double, double> mixture_weights(double T) const {
        const BeeInterval& b = require_bee();
        const double p1 = (b.T2 - T) / (b.T2 - b.T1);
        return {p1, 1.0 - p1};
    }

    /// Limit of n^-1 E_can[lambda_n]: the chord between (T1, u1) and (T2, u2)
    /// inside the BEE interval, T*^(1/k) elsewhere.
    double lambda_canonical(double T) const {
        if (!in_bee_phase(T)) return std::pow(T, 1.0 / k_);
        const auto [p1, p2] = mixture_weights(T);
        return p1 * bee_->u1.u + p2 * bee_->u2.u;
    }

    /// Limit of n^-1 E_mic[lambda_n] where it is known (replica symmetry).
    std::optional<double> lambda_microcanonical(double T) const {
        if (in_bee_phase(T) && !rs_.contains(T)) return std::nullopt;
        return std::pow(T, 1.0 / k_);
    }

    std::optional<double> s_infinity(double T) const {
        detail::check_constraint_scope(T, k_);
        if (!in_bee_phase(T)) return 0.0;
        if (!rs_.contains(T)) return std::nullopt;
        const BeeInterval& b = *bee_;
        const bool left = T < pivot().T0;
        const double Ti = left ? b.T1 : b.T2;
        const LocalMax& ui = left ? b.u1 : b.u2;
        return b.theta_hat * (Ti - T) + entropy_of_root(T, k_) - bernoulli_entropy_logit(ui.logit);
    }

    std::optional<double> delta_infinity(double T) const {
        detail::check_constraint_scope(T, k_);
        if (!in_bee_phase(T)) return 0.0;
        if (!rs_.contains(T)) return std::nullopt;
        return lambda_canonical(T) - std::pow(T, 1.0 / k_);
    }

    RegimeReport classify(double T) const {
        detail::check_constraint_scope(T, k_);
        RegimeReport r{T, k_, d_, Regime::Equivalent, 0.0, 0.0, 0.0};
        if (!in_bee_phase(T)) {
            r.theta_star = detail::equivalence_multiplier(T, k_);
            return r;
        }
        r.theta_star = bee_->theta_hat;
        r.regime = rs_.contains(T) ? Regime::BeeReplicaSymmetric : Regime::BeeReplicaUnknown;
        r.s_inf = s_infinity(T);
        r.delta_inf = delta_infinity(T);
        return r;
    }

private:
    const BeeInterval& require_bee() const {
        if (!bee_) {
            throw DomainError("no BEE phase for k=" + std::to_string(k_));
        }
        return *bee_;
    }

    double k_;
    double d_;
    std::optional<BeeInterval> bee_;
    IntervalUnion rs_;
};

inline std::optional<double> s_infinity(double T_star, double k, double d) {
    return PhaseModel(k, d).s_infinity(T_star);
}

inline std::optional<double> delta_infinity(double T_star, double k, double d) {
    return PhaseModel(k, d).delta_infinity(T_star);
}

/// Leading coefficient of s_inf near a BEE boundary, in the closed form
///   C(T,k) = T^((1-2k)/k) / (2k) * { (1/k)(1 + u/(1-u)) + (1/k - 1) log(u/(1-u)) },
/// u = T^(1/k). This expression equals J_k''(T); the Taylor coefficient of
/// s_inf in (T - T_i)^2 is J_k''(T_i) / 2.
inline double relative_entropy_curvature(double T, double k) {
    const double u = std::pow(T, 1.0 / k);
    return std::pow(T, (1.0 - 2.0 * k) / k) / (2.0 * k) *
           ((1.0 / k) * (1.0 + u / (1.0 - u)) + (1.0 / k - 1.0) * std::log(u / (1.0 - u)));
}

/// Slope of delta_inf at a BEE boundary T:
///   (T2^(1/k) - T1^(1/k)) / (T2 - T1) - (1/k) T^((1-k)/k).
inline double spectral_gap_slope(double T, const BeeInterval& b) {
    return (b.u2.u - b.u1.u) / (b.T2 - b.T1) - std::pow(T, (1.0 - b.k) / b.k) / b.k;
}

struct MixturePrediction {
    double p1;          // weight on the ER(u1) component
    double p2;
    double lambda_can;  // f(T*) = p1 u1 + p2 u2
};

/// Two-point mixture limit of the canonical ensemble at constraint T* inside
/// the BEE interval of k.
inline MixturePrediction mixture_prediction(double T_star, double k) {
    if (!has_bee_phase(k)) {
        throw DomainError("mixture_prediction: k=" + std::to_string(k) + " has no BEE phase");
    }
    const BeeInterval b = bee_interval(k);
    if (!(T_star >= b.T1 && T_star <= b.T2)) {
        throw DomainError("mixture_prediction: T*=" + std::to_string(T_star) +
                          " outside [T1, T2] for k=" + std::to_string(k));
    }
    const double p1 = (b.T2 - T_star) / (b.T2 - b.T1);
    const double p2 = 1.0 - p1;
    return {p1, p2, p1 * b.u1.u + p2 * b.u2.u};
}

struct CurveRow {
    double T_star;
    std::optional<double> lambda_mic;
    double lambda_can;
    std::optional<double> s_inf;
    std::optional<double> delta_inf;
    Regime regime;
};

/// Limiting eigenvalue curves and entropy/gap values along a T* grid.
/// Grid points outside [(1/2)^k, 1) are skipped.
inline std::vector<CurveRow> eigenvalue_curves(double k, double d, const std::vector<double>& grid) {
    if (!has_bee_phase(k)) {
        throw DomainError("eigenvalue_curves: k=" + std::to_string(k) + " has no BEE phase");
    }
    const PhaseModel model(k, d);
    std::vector<CurveRow> rows;
    const double lo = std::pow(0.5, k);
    for (double T : grid) {
        if (!(T >= lo && T < 1.0)) continue;
        const RegimeReport r = model.classify(T);
        rows.push_back({T, model.lambda_microcanonical(T), model.lambda_canonical(T), r.s_inf,
                        r.delta_inf, r.regime});
    }
    return rows;
}

} // namespace bee
