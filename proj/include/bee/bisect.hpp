#pragma once

#include <cmath>
#include <cstddef>
#include <string>

#include "bee/errors.hpp"

namespace bee {

struct BisectOptions {
    double x_tol = 0.0;          // stop once hi - lo <= x_tol (0: run to machine precision)
    std::size_t max_iter = 200;
};

// Finds the switch point of a monotone predicate on [lo, hi]:
// pred(lo) == false, pred(hi) == true. Returns {lo, hi} after narrowing.
struct Bracket {
    double lo;
    double hi;
    double mid() const { return lo + 0.5 * (hi - lo); }
};

template <class Pred>
Bracket bisect_predicate(Pred&& pred, double lo, double hi, BisectOptions opt = {}) {
    for (std::size_t it = 0; it < opt.max_iter; ++it) {
        if (hi - lo <= opt.x_tol) break;
        const double m = lo + 0.5 * (hi - lo);
        if (m <= lo || m >= hi) break;
        if (pred(m)) hi = m; else lo = m;
    }
    return {lo, hi};
}

// Root of a continuous f with a sign change on [lo, hi]. Returns the endpoint
// of the final bracket with the smaller |f|.
template <class F>
double bisect_root(F&& f, double lo, double hi, BisectOptions opt = {}) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        throw ConvergenceError("bisect_root: no sign change on [" + std::to_string(lo) + ", " +
                               std::to_string(hi) + "]");
    }
    const bool rising = flo < 0.0;
    for (std::size_t it = 0; it < opt.max_iter; ++it) {
        if (hi - lo <= opt.x_tol) break;
        const double m = lo + 0.5 * (hi - lo);
        if (m <= lo || m >= hi) break;
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fm < 0.0) == rising) { lo = m; flo = fm; }
        else { hi = m; fhi = fm; }
    }
    return std::abs(flo) <= std::abs(fhi) ? lo : hi;
}

} // namespace bee
