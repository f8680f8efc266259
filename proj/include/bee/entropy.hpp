#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "bee/errors.hpp"

namespace bee {

inline constexpr double half_log2 = 0.5 * std::numbers::ln2;

namespace detail {

inline double xlogx(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

inline void check_unit(double u, const char* who) {
    if (!(u >= 0.0 && u <= 1.0)) {
        throw DomainError(std::string(who) + ": argument " + std::to_string(u) +
                          " outside [0,1]");
    }
}

} // namespace detail

// log(1 + e^x) without overflow.
inline double softplus(double x) {
    return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

inline double sigmoid(double s) {
    return s >= 0.0 ? 1.0 / (1.0 + std::exp(-s)) : std::exp(s) / (1.0 + std::exp(s));
}

// log sigma(s); log(1 - sigma(s)) is log_sigmoid(-s).
inline double log_sigmoid(double s) { return -softplus(-s); }

inline double logit(double u) { return std::log(u) - std::log1p(-u); }

/// Scaled Bernoulli entropy I(u) = 1/2 u log u + 1/2 (1-u) log(1-u), with
/// 0 log 0 = 0. Takes values in [-1/2 log 2, 0].
inline double bernoulli_entropy(double u) {
    detail::check_unit(u, "bernoulli_entropy");
    return 0.5 * detail::xlogx(u) + 0.5 * detail::xlogx(1.0 - u);
}

// I(sigma(s)) evaluated through the logit so that both u and 1-u keep full
// relative precision when u is within 1e-12 of an endpoint.
inline double bernoulli_entropy_logit(double s) {
    const double u = sigmoid(s);
    const double v = sigmoid(-s);
    return 0.5 * (u * log_sigmoid(s) + v * log_sigmoid(-s));
}

// I'(u) = 1/2 log(u / (1-u)).
inline double bernoulli_entropy_derivative(double u) { return 0.5 * logit(u); }

/// Relative entropy of Bernoulli(u) with respect to Bernoulli(p): the integrand
/// of the Erdos-Renyi rate function I_p at a constant graphon f = u.
/// Relation to the scaled entropy: I(u) = 1/2 entropy_rate_p(u, 1/2) - 1/2 log 2.
inline double entropy_rate_p(double u, double p) {
    detail::check_unit(u, "entropy_rate_p");
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("entropy_rate_p: p=" + std::to_string(p) + " outside (0,1)");
    }
    const double a = u == 0.0 ? 0.0 : u * std::log(u / p);
    const double b = u == 1.0 ? 0.0 : (1.0 - u) * std::log((1.0 - u) / (1.0 - p));
    return a + b;
}

} // namespace bee
