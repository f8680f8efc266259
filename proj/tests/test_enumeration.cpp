#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "bee/enumeration.hpp"

using namespace bee;

TEST(Enumeration, UniformPressureAtThetaZero) {
    for (int n = 2; n <= 6; ++n) {
        const auto r = exact_enumeration(n, SubgraphSpec::triangle(), 0.0);
        EXPECT_NEAR(r.psi_n, n * (n - 1) / 2.0 * std::numbers::ln2 / (n * n), 1e-14);
        EXPECT_NEAR(r.mean_edge_density, 0.5, 1e-14);
        EXPECT_EQ(r.graphs, std::uint64_t(1) << (n * (n - 1) / 2));
    }
}

TEST(Enumeration, ThreeVertexEdgeHandSum) {
    // hom(edge, G) = 2e over 3^2 maps, so Z = sum_e C(3,e) exp(2e) = (1 + e^2)^3.
    const auto r = exact_enumeration(3, SubgraphSpec::edge(), 1.0);
    EXPECT_NEAR(r.psi_n, std::log1p(std::exp(2.0)) / 3.0, 1e-14);
    const double q = std::exp(2.0) / (1.0 + std::exp(2.0));
    EXPECT_NEAR(r.mean_edge_density, q, 1e-14);
    EXPECT_NEAR(r.mean_t_F, 2.0 * 3.0 * q / 9.0, 1e-14);
}

TEST(Enumeration, PressureIncreasingWithSlopeMeanDensity) {
    const SubgraphSpec F = SubgraphSpec::triangle();
    double prev = -INFINITY;
    for (double th = -1.0; th <= 2.0; th += 0.25) {
        const auto r = exact_enumeration(5, F, th);
        EXPECT_GT(r.psi_n, prev);
        prev = r.psi_n;
        const double h = 1e-5;
        const double slope =
            (exact_enumeration(5, F, th + h).psi_n - exact_enumeration(5, F, th - h).psi_n) / (2 * h);
        EXPECT_NEAR(slope, r.mean_t_F, 1e-7);
    }
}

TEST(Enumeration, EdgeFibersAreBinomial) {
    const auto r = exact_enumeration(6, SubgraphSpec::edge(), 0.3);
    ASSERT_EQ(r.fibers.size(), 16u);
    std::uint64_t total = 0;
    for (const auto& [h, f] : r.fibers) {
        const int e = int(h / 2);
        EXPECT_EQ(f.count, std::uint64_t(std::llround(std::tgamma(16.0) / (std::tgamma(e + 1.0) * std::tgamma(16.0 - e)))));
        EXPECT_NEAR(f.mean_edge_density, e / 15.0, 1e-14);
        total += f.count;
    }
    EXPECT_EQ(total, r.graphs);
    EXPECT_NEAR(r.nearest_fiber(0.4).t_F, 14.0 / 36.0, 1e-15);
}

TEST(Enumeration, DeterministicAndBounded) {
    const auto a = exact_enumeration(6, SubgraphSpec::triangle(), 0.3);
    const auto b = exact_enumeration(6, SubgraphSpec::triangle(), 0.3);
    EXPECT_EQ(a.psi_n, b.psi_n);
    EXPECT_EQ(a.mean_lambda_over_n, b.mean_lambda_over_n);
    EXPECT_GT(a.mean_lambda_over_n, 0.0);
    EXPECT_LT(a.mean_lambda_over_n, 1.0);
    EXPECT_GE(a.var_t_F, 0.0);
    EXPECT_THROW(exact_enumeration(7, SubgraphSpec::edge(), 0.0), ResourceError);
}

TEST(Enumeration, HandlesLargeThetaWithoutOverflow) {
    const auto r = exact_enumeration(6, SubgraphSpec::edge(), 500.0);
    EXPECT_TRUE(std::isfinite(r.psi_n));
    // Dominated by K_6 with t = 30/36.
    EXPECT_NEAR(r.psi_n, 500.0 * 30.0 / 36.0, 1e-9);
    EXPECT_NEAR(r.mean_edge_density, 1.0, 1e-12);
}
