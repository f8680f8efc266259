#pragma once

#include <cmath>

#include "bee/bisect.hpp"

namespace bee {

// Minimum (T0, k0) of the critical curve.
struct Pivot {
    double k0;
    double T0;
};

// k0 solves ((k-1)/k) log(k-1) = 1; the left side is increasing on [2, 10].
inline Pivot solve_k0_T0() {
    const auto f = [](double k) { return (k - 1.0) / k * std::log(k - 1.0) - 1.0; };
    const double k0 = bisect_root(f, 2.0, 10.0, {.x_tol = 1e-12, .max_iter = 200});
    return {k0, std::pow((k0 - 1.0) / k0, k0)};
}

inline const Pivot& pivot() {
    static const Pivot p = solve_k0_T0();
    return p;
}

// Closed form of the critical multiplier at the pivot, k0^(k0-1) / (2 (k0-1)^k0).
inline double theta_hat_at_pivot() {
    const double k0 = pivot().k0;
    return std::pow(k0, k0 - 1.0) / (2.0 * std::pow(k0 - 1.0, k0));
}

} // namespace bee
