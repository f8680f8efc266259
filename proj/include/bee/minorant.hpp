#pragma once

// Convex minorant of J_k(x) = I(x^(1/k)) on [(1/2)^k, 1], tabulated on a
// uniform grid. A constraint value T is in the equivalence region exactly when
// (T, J_k(T)) lies on this minorant. This check uses only the entropy function
// and a lower hull; it never calls the variational solver.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "bee/entropy.hpp"
#include "bee/errors.hpp"

namespace bee {

class MinorantFn {
public:
    static constexpr std::size_t default_points = 200001;
    static constexpr double default_tol = 1e-8;

    MinorantFn(double k, std::size_t points = default_points) : k_(k) {
        if (!(k >= 1.0)) throw DomainError("MinorantFn: k must be >= 1");
        if (points < 3) throw DomainError("MinorantFn: need at least 3 points");
        x_lo_ = std::pow(0.5, k);
        h_ = (1.0 - x_lo_) / double(points - 1);
        x_.resize(points);
        y_.resize(points);
        for (std::size_t i = 0; i < points; ++i) {
            x_[i] = i + 1 == points ? 1.0 : x_lo_ + double(i) * h_;
            y_[i] = value(x_[i]);
        }
        build_hull();
    }

    double k() const { return k_; }
    std::size_t size() const { return x_.size(); }
    const std::vector<double>& knots() const { return x_; }
    const std::vector<double>& values() const { return y_; }
    const std::vector<std::size_t>& hull_vertices() const { return hull_; }

    // J_k(x).
    double value(double x) const { return bernoulli_entropy(std::pow(x, 1.0 / k_)); }

    // Minorant evaluated at x by linear interpolation along the hull.
    double minorant(double x) const {
        if (x <= x_.front()) return y_.front();
        if (x >= x_.back()) return y_.back();
        auto it = std::upper_bound(hull_.begin(), hull_.end(), x,
                                   [this](double v, std::size_t i) { return v < x_[i]; });
        const std::size_t b = *it;
        const std::size_t a = *(it - 1);
        const double t = (x - x_[a]) / (x_[b] - x_[a]);
        return y_[a] + t * (y_[b] - y_[a]);
    }

    double vertical_gap(double x) const { return value(x) - minorant(x); }

    bool on_minorant(double x, double tol = default_tol) const { return vertical_gap(x) <= tol; }

    /// Hull edges spanning more than one grid cell: the open intervals where
    /// the minorant lies strictly below J_k.
    std::vector<std::pair<double, double>> detached_intervals() const {
        std::vector<std::pair<double, double>> out;
        for (std::size_t i = 1; i < hull_.size(); ++i) {
            if (hull_[i] - hull_[i - 1] > 1) out.emplace_back(x_[hull_[i - 1]], x_[hull_[i]]);
        }
        return out;
    }

private:
    // Andrew's monotone chain, lower half. Points are already sorted by x.
    void build_hull() {
        hull_.clear();
        for (std::size_t i = 0; i < x_.size(); ++i) {
            while (hull_.size() >= 2) {
                const std::size_t a = hull_[hull_.size() - 2];
                const std::size_t b = hull_.back();
                const double cross =
                    (x_[b] - x_[a]) * (y_[i] - y_[a]) - (y_[b] - y_[a]) * (x_[i] - x_[a]);
                if (cross <= 0.0) hull_.pop_back();
                else break;
            }
            hull_.push_back(i);
        }
    }

    double k_;
    double x_lo_;
    double h_;
    std::vector<double> x_;
    std::vector<double> y_;
    std::vector<std::size_t> hull_;
};

/// Equivalence test through the convex minorant of J_k.
inline bool convex_minorant_oracle(double T_star, double k) {
    if (!(T_star >= std::pow(0.5, k) && T_star < 1.0)) {
        throw DomainError("convex_minorant_oracle: T* outside [(1/2)^k, 1)");
    }
    return MinorantFn(k).on_minorant(T_star);
}

} // namespace bee
