#include <sstream>

#include <gtest/gtest.h>

#include "bee/io.hpp"

using namespace bee;

TEST(Format, ShortestRoundTrip) {
    EXPECT_EQ(io::fmt(0.1), "0.1");
    EXPECT_EQ(io::fmt(2.0), "2");
    EXPECT_EQ(io::fmt(std::optional<double>{}), "");
    const double x = 0.32372726233100017;
    EXPECT_EQ(std::stod(io::fmt(x)), x);
}

TEST(Grid, Parsing) {
    const auto g = io::parse_grid("0:1:5");
    ASSERT_TRUE(g);
    EXPECT_EQ(*g, (std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}));
    EXPECT_EQ(io::parse_grid("0.2:0.4")->size(), 200u);
    EXPECT_EQ(io::parse_grid("0.3:0.3:1")->size(), 1u);
    for (const char* bad : {"", "1", "0:x", "1:0", "0:1:0", "0:1:2.5", "0:1:3:4", "0:1:1"}) {
        EXPECT_FALSE(io::parse_grid(bad)) << bad;
    }
}

TEST(Csv, GoldenHeaders) {
    std::ostringstream phase, curves;
    io::write_phase_csv(phase, critical_curve(5.0, 5.01, 0.005));
    const std::string p = phase.str();
    EXPECT_EQ(p.substr(0, p.find('\n')), "k,T1,T2");
    EXPECT_EQ(std::count(p.begin(), p.end(), '\n'), 4);

    io::write_curves_csv(curves, eigenvalue_curves(7.0, 5.0, {0.01, 0.3237}));
    const std::string c = curves.str();
    EXPECT_EQ(c.substr(0, c.find('\n')), "T_star,lambda_mic,lambda_can,s_inf,delta_inf,regime");
    // Second row sits where replica symmetry may break: blank mic, s, delta.
    const std::string last = c.substr(c.rfind('\n', c.size() - 2) + 1);
    EXPECT_NE(last.find(",,"), std::string::npos) << last;
    EXPECT_NE(last.find("BEE_RS_UNKNOWN"), std::string::npos);
}
