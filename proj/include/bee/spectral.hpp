#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "bee/graph.hpp"

namespace bee {

/// Largest adjacency eigenvalue lambda_n (equal to the spectral norm for a
/// nonnegative symmetric matrix). Power iteration on A + I from the all-ones
/// vector; the shift keeps -lambda of bipartite graphs from competing. Stops
/// once the residual ||A x - lambda x|| / ||x|| drops below tol (lambda + 1).
inline double largest_eigenvalue(const SimpleGraph& G, double tol = 1e-10,
                                 std::size_t max_iter = 20000) {
    const int n = G.n();
    if (G.edge_count() == 0) return 0.0;
    std::vector<double> x(n, 1.0 / std::sqrt(double(n)));
    std::vector<double> y(n);
    double lambda = 0.0;
    for (std::size_t it = 0; it < max_iter; ++it) {
        for (int i = 0; i < n; ++i) {
            const std::uint8_t* r = G.row(i);
            double s = 0.0;
            for (int j = 0; j < n; ++j) s += r[j] ? x[j] : 0.0;
            y[i] = s;
        }
        double xy = 0.0;
        for (int i = 0; i < n; ++i) xy += x[i] * y[i];
        lambda = xy;  // ||x|| = 1
        double res = 0.0;
        double norm = 0.0;
        for (int i = 0; i < n; ++i) {
            const double d = y[i] - lambda * x[i];
            res += d * d;
            y[i] += x[i];
            norm += y[i] * y[i];
        }
        if (std::sqrt(res) <= tol * (lambda + 1.0)) break;
        norm = std::sqrt(norm);
        for (int i = 0; i < n; ++i) x[i] = y[i] / norm;
    }
    return lambda;
}

} // namespace bee
