#include <gtest/gtest.h>

#include "bee/simulation.hpp"

using namespace bee;
using nlohmann::json;

TEST(SimulationConfig, ParsesSubgraphForms) {
    std::string err;
    EXPECT_EQ(parse_subgraph("triangle", err)->k(), 3);
    EXPECT_EQ(parse_subgraph("star:5", err)->d(), 5);
    EXPECT_EQ(parse_subgraph("cycle:5", err)->m(), 5);
    const json custom = {{"m", 4}, {"edges", {{0, 1}, {1, 2}, {2, 3}}}};
    EXPECT_EQ(parse_subgraph(custom, err)->k(), 3);
    EXPECT_FALSE(parse_subgraph("star:x", err));
    EXPECT_FALSE(parse_subgraph("wheel", err));
    EXPECT_FALSE(parse_subgraph(json{{"m", 2}, {"edges", {{0, 0}}}}, err));
}

TEST(SimulationConfig, ReportsAllProblemsTogether) {
    const json bad = {{"n", 1}, {"subgraph", "wheel"}, {"theta", "big"}, {"sweeps", -1}, {"colour", "red"}};
    try {
        parse_simulation_config(bad);
        FAIL() << "expected InputError";
    } catch (const InputError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("5 problem(s)"), std::string::npos) << msg;
        for (const char* needle : {"unknown key 'colour'", "subgraph", "theta", "sweeps", "n must be"}) {
            EXPECT_NE(msg.find(needle), std::string::npos) << needle;
        }
    }
}

TEST(SimulationConfig, MicrocanonicalKeys) {
    const json j = {{"n", 20}, {"subgraph", "edge"}, {"ensemble", "microcanonical"}, {"t_star", 0.4}};
    const SimulationConfig c = parse_simulation_config(j);
    EXPECT_FALSE(c.canonical);
    EXPECT_FALSE(c.window.has_value());
    EXPECT_THROW(parse_simulation_config(json{{"n", 20}, {"subgraph", "edge"}, {"ensemble", "micro"}}), InputError);
}

TEST(Simulation, ExactComparisonAtSixVertices) {
    const json j = {{"n", 6}, {"subgraph", "triangle"}, {"theta", 0.3}, {"chains", 2}, {"sweeps", 4000}, {"seed", 12}};
    const SimulationResult r = run_simulation(parse_simulation_config(j));
    ASSERT_TRUE(r.exact.has_value());
    EXPECT_EQ(r.seed, 12u);
    const json& ex = r.summary.at("exact");
    EXPECT_TRUE(ex.at("t_F").at("within_3se").get<bool>()) << ex.dump();
    EXPECT_TRUE(ex.at("lambda_over_n").at("within_3se").get<bool>()) << ex.dump();
    EXPECT_EQ(r.summary.at("chains").size(), 2u);
}

TEST(Simulation, MicrocanonicalExactWindow) {
    const json j = {{"n", 6},        {"subgraph", "edge"}, {"ensemble", "microcanonical"},
                    {"t_star", 0.4}, {"window", 0.06},     {"sweeps", 3000},
                    {"seed", 3}};
    const SimulationResult r = run_simulation(parse_simulation_config(j));
    const json& ex = r.summary.at("exact");
    EXPECT_GT(ex.at("window_graphs").get<double>(), 0.0);
    EXPECT_TRUE(ex.at("edge_density").at("within_3se").get<bool>()) << ex.dump();
}

TEST(Simulation, MissingSeedIsDrawnAndRecorded) {
    const json j = {{"n", 8}, {"subgraph", "edge"}, {"theta", 0.0}, {"sweeps", 20}, {"burn_in", 2}};
    const SimulationResult r = run_simulation(parse_simulation_config(j));
    EXPECT_EQ(r.summary.at("seed").get<std::uint64_t>(), r.seed);
    SimulationConfig again = parse_simulation_config(j);
    again.seed = r.seed;
    EXPECT_EQ(run_simulation(again).chains[0].edge_density, r.chains[0].edge_density);
}

TEST(Simulation, ModesInitialisationAndBimodalityReport) {
    const json j = {{"n", 30},          {"subgraph", "star:5"}, {"theta", "hat"}, {"chains", 2},
                    {"sweeps", 200},    {"burn_in", 20},        {"init", "modes"}, {"record_lambda", false},
                    {"bimodality", true}, {"seed", 1}};
    const SimulationResult r = run_simulation(parse_simulation_config(j));
    const CriticalTheta c = find_theta_hat(5.0);
    EXPECT_DOUBLE_EQ(r.theta, c.theta_hat);
    EXPECT_DOUBLE_EQ(*r.chain_configs[0].init_density, c.u1.u);
    EXPECT_DOUBLE_EQ(*r.chain_configs[1].init_density, c.u2.u);
    EXPECT_TRUE(r.summary.contains("bimodality"));
    EXPECT_EQ(r.summary["bimodality"]["predicted"].size(), 2u);
}
