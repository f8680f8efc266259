#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "bee/minorant.hpp"
#include "bee/phase.hpp"

using namespace bee;

TEST(Minorant, BelowFunctionAndConvex) {
    const MinorantFn f(7.0, 20001);
    const auto& x = f.knots();
    for (std::size_t i = 0; i < x.size(); i += 37) EXPECT_LE(f.minorant(x[i]), f.values()[i] + 1e-15);
    const auto& h = f.hull_vertices();
    for (std::size_t i = 2; i < h.size(); ++i) {
        const double s1 = (f.values()[h[i - 1]] - f.values()[h[i - 2]]) / (x[h[i - 1]] - x[h[i - 2]]);
        const double s2 = (f.values()[h[i]] - f.values()[h[i - 1]]) / (x[h[i]] - x[h[i - 1]]);
        EXPECT_GE(s2, s1);
    }
}

TEST(Minorant, OneDetachedIntervalMatchingBeeInterval) {
    for (double k : {5.0, 7.0, 10.0}) {
        const MinorantFn f(k);
        const auto gaps = f.detached_intervals();
        ASSERT_EQ(gaps.size(), 1u) << k;
        const BeeInterval b = bee_interval(k);
        const double h = f.knots()[1] - f.knots()[0];
        EXPECT_NEAR(gaps[0].first, b.T1, 50 * h);
        EXPECT_NEAR(gaps[0].second, b.T2, 50 * h);
    }
}

TEST(Minorant, ConvexBelowPivot) {
    // J_k'' >= 0 everywhere in scope at k = 3, so the minorant is J_k itself.
    for (int i = 0; i <= 1000; ++i) {
        const double x = std::pow(0.5, 3.0) + (1.0 - 1e-9 - std::pow(0.5, 3.0)) * i / 1000.0;
        EXPECT_GE(entropy_of_root_second_derivative(x, 3.0), 0.0) << x;
    }
    const MinorantFn f(3.0);
    EXPECT_TRUE(f.detached_intervals().empty());
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> U(0.125, 0.9999);
    for (int i = 0; i < 200; ++i) EXPECT_TRUE(f.on_minorant(U(rng)));
}

TEST(Minorant, OracleExamples) {
    EXPECT_TRUE(convex_minorant_oracle(std::pow(0.5, 7.0), 7.0));
    const BeeInterval b = bee_interval(7.0);
    EXPECT_FALSE(convex_minorant_oracle(0.5 * (b.T1 + b.T2), 7.0));
    EXPECT_FALSE(convex_minorant_oracle(pivot().T0, 7.0));
    EXPECT_TRUE(convex_minorant_oracle(0.5 * (std::pow(0.5, 7.0) + b.T1), 7.0));
    EXPECT_THROW(convex_minorant_oracle(0.001, 7.0), DomainError);
    EXPECT_THROW(convex_minorant_oracle(1.0, 7.0), DomainError);
}

TEST(Minorant, ReplicaSymmetryOfFiveCycleAtExponentTwo) {
    // Maximum degree 2 < k0: J_2 is convex, so no degree-level BEE interval.
    const MinorantFn f(2.0);
    EXPECT_TRUE(f.detached_intervals().empty());
}
