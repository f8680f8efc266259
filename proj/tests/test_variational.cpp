#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "bee/entropy.hpp"
#include "bee/pivot.hpp"
#include "bee/variational.hpp"

using namespace bee;

namespace {

// Independent maximiser finder: sign changes of l' on a uniform 20000-point
// grid of the logit s = log(u/(1-u)) over [-5, 2 theta k + 2], refined by plain
// bisection. The logit grid resolves maximisers lying within 1e-12 of u = 1.
std::vector<double> grid_scan_maxima(double theta, double k) {
    const auto d = [&](double s) {
        const double u = 1.0 / (1.0 + std::exp(-s));
        return theta * k * std::pow(u, k - 1.0) - 0.5 * s;
    };
    const int N = 20000;
    const double lo_s = -5.0, hi_s = 2.0 * theta * k + 2.0;
    std::vector<double> out;
    double prev_s = lo_s, prev = d(lo_s);
    for (int i = 1; i <= N; ++i) {
        const double s = lo_s + (hi_s - lo_s) * i / N;
        const double cur = d(s);
        if (prev > 0.0 && cur <= 0.0) {
            double lo = prev_s, hi = s;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi) break;
                (d(mid) > 0.0 ? lo : hi) = mid;
            }
            out.push_back(1.0 / (1.0 + std::exp(-0.5 * (lo + hi))));
        }
        prev_s = s;
        prev = cur;
    }
    return out;
}

} // namespace

TEST(BernoulliEntropy, Examples) {
    EXPECT_NEAR(bernoulli_entropy(0.5), -0.5 * std::numbers::ln2, 1e-15);
    EXPECT_EQ(bernoulli_entropy(0.0), 0.0);
    EXPECT_EQ(bernoulli_entropy(1.0), 0.0);
    EXPECT_NEAR(bernoulli_entropy(0.3), bernoulli_entropy(0.7), 1e-16);
}

TEST(BernoulliEntropy, SymmetryAndRange) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double u = U(rng);
        const double v = bernoulli_entropy(u);
        EXPECT_NEAR(v, bernoulli_entropy(1.0 - u), 1e-15);
        EXPECT_LE(v, 0.0);
        EXPECT_GE(v, -0.5 * std::numbers::ln2 - 1e-16);
    }
}

TEST(BernoulliEntropy, RejectsOutsideUnitInterval) {
    EXPECT_THROW(bernoulli_entropy(-0.1), DomainError);
    EXPECT_THROW(bernoulli_entropy(1.5), DomainError);
    EXPECT_THROW(bernoulli_entropy(std::nan("")), DomainError);
}

TEST(BernoulliEntropy, LogitFormMatches) {
    for (double s : {-30.0, -3.0, -0.2, 0.0, 0.7, 5.0, 25.0}) {
        const double u = 1.0 / (1.0 + std::exp(-s));
        EXPECT_NEAR(bernoulli_entropy_logit(s), bernoulli_entropy(u), 1e-13) << s;
    }
}

TEST(EntropyRate, Examples) {
    EXPECT_NEAR(entropy_rate_p(0.3, 0.3), 0.0, 1e-16);
    EXPECT_NEAR(entropy_rate_p(0.5, 0.5), 0.0, 1e-16);
    EXPECT_NEAR(entropy_rate_p(0.8, 0.5), 0.8 * std::log(1.6) + 0.2 * std::log(0.4), 1e-15);
    EXPECT_THROW(entropy_rate_p(0.5, 0.0), DomainError);
    EXPECT_THROW(entropy_rate_p(0.5, 1.0), DomainError);
    EXPECT_THROW(entropy_rate_p(1.2, 0.5), DomainError);
}

TEST(EntropyRate, RescalesToHalfEntropy) {
    for (double u : {0.0, 0.1, 0.5, 0.77, 1.0}) {
        EXPECT_NEAR(bernoulli_entropy(u), 0.5 * entropy_rate_p(u, 0.5) - 0.5 * std::numbers::ln2, 1e-15);
    }
}

TEST(Objective, Examples) {
    EXPECT_NEAR(objective(1.0, {0.37, 4.0}), 0.37, 1e-15);
    EXPECT_NEAR(objective(0.0, {0.37, 4.0}), 0.0, 1e-15);
    EXPECT_NEAR(objective(0.5, {0.0, 6.0}), 0.5 * std::numbers::ln2, 1e-15);
    EXPECT_THROW(objective(1.1, {0.3, 2.0}), DomainError);
}

TEST(Objective, ParamsValidation) {
    EXPECT_THROW((ObjectiveParams{-0.1, 3.0}.validate()), DomainError);
    EXPECT_THROW((ObjectiveParams{0.1, 0.5}.validate()), DomainError);
    EXPECT_NO_THROW((ObjectiveParams{0.0, 1.0}.validate()));
}

TEST(Objective, DerivativeMatchesCentredDifferences) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(0.02, 0.98), Th(0.0, 1.0), K(1.0, 12.0);
    for (int i = 0; i < 500; ++i) {
        const ObjectiveParams p{Th(rng), K(rng)};
        const double u = U(rng);
        const double h = 1e-6;
        const double fd = (objective(u + h, p) - objective(u - h, p)) / (2 * h);
        EXPECT_NEAR(fd, objective_derivative(u, p), 1e-6);
    }
}

TEST(LocalMaxima, ThetaZeroGivesHalf) {
    for (double k : {1.0, 3.0, 7.5, 40.0}) {
        const auto prof = find_local_maxima({0.0, k});
        ASSERT_EQ(prof.count(), 1);
        EXPECT_DOUBLE_EQ(prof.global_max().u, 0.5);
    }
}

TEST(LocalMaxima, GlobalBranchAtK7) {
    const auto low = find_local_maxima({0.3, 7.0});
    ASSERT_TRUE(low.first);
    EXPECT_EQ(low.global, GlobalMax::U1);
    const auto high = find_local_maxima({0.4, 7.0});
    EXPECT_EQ(high.global, GlobalMax::U2);
    ASSERT_TRUE(high.second);
    EXPECT_GT(high.second->u, 6.0 / 7.0);
}

TEST(LocalMaxima, FirstOrderResidual) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> Th(0.0, 1.5), K(1.0, 40.0);
    for (int i = 0; i < 2000; ++i) {
        const ObjectiveParams p{Th(rng), K(rng)};
        const auto prof = find_local_maxima(p);
        ASSERT_GE(prof.count(), 1);
        for (const auto& m : {prof.first, prof.second}) {
            if (!m) continue;
            const double u = m->u;
            EXPECT_LE(std::abs(first_order_logit(m->logit, p)), 1e-10);
            // Same condition in u, with 1-u taken from the logit so it keeps full precision.
            const double v = sigmoid(-m->logit);
            const double r = p.theta * p.k * std::pow(u, p.k - 1.0) - 0.5 * (std::log(u) - std::log(v));
            EXPECT_LE(std::abs(r), 1e-10) << p.theta << ' ' << p.k;
            EXPECT_NEAR(m->value, objective(u, p), 1e-12);
        }
        if (prof.bimodal()) {
            EXPECT_LT(prof.first->u, prof.second->u);
        }
    }
}

TEST(LocalMaxima, AgreesWithGridScanOracle) {
    for (double k : {2.0, 4.0, 5.0, 6.0, 7.0, 10.0, 15.0}) {
        for (double theta = 0.05; theta < 1.0; theta += 0.0137) {
            const auto prof = find_local_maxima({theta, k});
            const auto ref = grid_scan_maxima(theta, k);
            std::vector<double> got;
            if (prof.first) got.push_back(prof.first->u);
            if (prof.second) got.push_back(prof.second->u);
            ASSERT_EQ(got.size(), ref.size()) << "theta=" << theta << " k=" << k;
            for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], ref[i], 1e-9);
        }
    }
}

TEST(LocalMaxima, IncreasingInTheta) {
    for (double k : {5.0, 7.0, 10.0}) {
        std::optional<double> prev1, prev2;
        for (double theta = 0.0; theta <= 0.6; theta += 0.001) {
            const auto prof = find_local_maxima({theta, k});
            if (prof.first) {
                if (prev1) {
                    EXPECT_GE(prof.first->u, *prev1 - 1e-14);
                }
                prev1 = prof.first->u;
            }
            if (prof.second) {
                if (prev2) {
                    EXPECT_GE(prof.second->u, *prev2 - 1e-14);
                }
                prev2 = prof.second->u;
            }
        }
    }
}

TEST(ThetaHat, GlobalSwitch) {
    for (double k : {5.0, 7.0, 12.0}) {
        const double th = find_theta_hat(k).theta_hat;
        for (double dt : {1e-6, 1e-3, 0.02}) {
            EXPECT_EQ(find_local_maxima({th - dt, k}).global, GlobalMax::U1);
            EXPECT_EQ(find_local_maxima({th + dt, k}).global, GlobalMax::U2);
        }
    }
}

TEST(ThetaHat, EqualHeightsAndUpperLocation) {
    for (double k : {4.6, 5.0, 7.0, 10.0, 25.0, 40.0}) {
        const CriticalTheta c = find_theta_hat(k);
        const ObjectiveParams p{c.theta_hat, k};
        EXPECT_NEAR(objective_logit(c.u1.logit, p), objective_logit(c.u2.logit, p), 1e-10);
        EXPECT_GT(c.u2.u, (k - 1.0) / k);
        EXPECT_LT(c.u1.u, c.u2.u);
    }
}

TEST(ThetaHat, LiesBetweenPointThreeAndPointFourAtK7) {
    const double th = find_theta_hat(7.0).theta_hat;
    EXPECT_GT(th, 0.3);
    EXPECT_LT(th, 0.4);
}

TEST(ThetaHat, ApproachesHalfLog2) {
    double prev_gap = INFINITY;
    for (double k : {10.0, 20.0, 30.0, 40.0, 60.0}) {
        const double gap = std::abs(find_theta_hat(k).theta_hat - 0.5 * std::numbers::ln2);
        EXPECT_LT(gap, prev_gap);
        prev_gap = gap;
    }
    EXPECT_LT(prev_gap, 1e-10);
}

TEST(ThetaHat, PivotClosedForm) {
    const double k0 = pivot().k0;
    const double closed = std::pow(k0, k0 - 1.0) / (2.0 * std::pow(k0 - 1.0, k0));
    EXPECT_NEAR(theta_hat_at_pivot(), closed, 1e-15);
    EXPECT_NEAR(find_theta_hat(k0 + 1e-4).theta_hat, closed, 1e-5);
    // At the pivot the single critical point sits at (k0-1)/k0.
    const auto prof = find_local_maxima({closed, k0});
    EXPECT_NEAR(prof.global_max().u, (k0 - 1.0) / k0, 2e-3);
}

TEST(ThetaHat, RejectsSmallK) {
    EXPECT_THROW(find_theta_hat(4.0), DomainError);
    EXPECT_THROW(find_theta_hat(pivot().k0), DomainError);
}

TEST(PsiInfinity, Examples) {
    EXPECT_NEAR(psi_infinity(0.0, 5.0), 0.5 * std::numbers::ln2, 1e-15);
    for (double th : {0.1, 0.3, 0.5, 1.0}) {
        EXPECT_GE(psi_infinity(th, 5.0), th * std::pow(0.5, 5.0) + 0.5 * std::numbers::ln2 - 1e-15);
    }
}

TEST(PsiInfinity, ConvexAndNondecreasing) {
    for (double k : {3.0, 7.0}) {
        const double h = 0.005;
        std::vector<double> v;
        for (double th = 0.0; th <= 0.8; th += h) v.push_back(psi_infinity(th, k));
        for (std::size_t i = 1; i < v.size(); ++i) EXPECT_GE(v[i], v[i - 1]);
        for (std::size_t i = 1; i + 1 < v.size(); ++i) EXPECT_GE(v[i + 1] - 2 * v[i] + v[i - 1], -1e-12);
    }
}
