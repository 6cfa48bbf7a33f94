#include "ltlplan/errors.hpp"
#include "ltlplan/oracle.hpp"
#include "ltlplan/scenario.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace ltlplan;

TEST(ExplicitPba, ProductCount) {
    auto m = load_model(R"({"robots":[{"id":1,"states":["l1","l2"],"initial":"l1","edges":[["l1","l2",1],["l2","l1",1]]}]})");
    auto nba = parse_nba("states: a b\ninitial: a\naccepting: b\na -- true --> b\nb -- true --> a\n");
    auto g = build_explicit_pba(m, nba);
    EXPECT_EQ(g.vertices.size(), 4u);
    EXPECT_EQ(g.num_edges, 4u);
    EXPECT_EQ(g.initial, std::vector<std::uint32_t>{0});
}

TEST(ExplicitPba, CaseTwoSize) {
    auto m = case2_model();
    auto nba = support::nba_of(case2_formula());
    auto g = build_explicit_pba(m, nba);
    EXPECT_EQ(g.vertices.size(), 16u * 16u * nba.num_states());
    // an ingested 24-state automaton gives the 6144-state product
    auto padded = nba;
    while (padded.num_states() < 24) padded.state_names.push_back("pad" + std::to_string(padded.num_states()));
    auto reparsed = parse_nba(emit_nba(padded));
    EXPECT_EQ(build_explicit_pba(m, reparsed).vertices.size(), 6144u);
}

TEST(ExplicitPba, CaseOneExceedsCapacity) {
    auto m = case1_model(9);
    auto nba = support::nba_of(case1_formula());
    try {
        build_explicit_pba(m, nba);
        FAIL() << "expected CapacityExceeded";
    } catch (const CapacityExceeded& e) {
        EXPECT_EQ(e.count(), 3099363912u);
        EXPECT_EQ(e.limit(), kDefaultMaxStates);
        EXPECT_NE(std::string(e.what()).find("3099363912"), std::string::npos);
    }
}

TEST(OracleOptimalPlan, ZeroSelfLoopAtAcceptingState) {
    auto m = load_model(R"({"robots":[{"id":1,"states":["l1","l2","l3"],"initial":"l1","edges":[
        ["l1","l2",1.25],["l2","l3",2],["l3","l3",0],["l1","l3",4]]}]})");
    auto nba = support::nba_of("<> r1@l3");
    auto res = oracle_optimal_plan(m, nba);
    ASSERT_TRUE(res.plan);
    EXPECT_EQ(res.plan->total_cost, 3.25);
    EXPECT_EQ(res.plan->suffix_cost, 0.0);
    EXPECT_TRUE(validate_plan(m, nba, *res.plan).ok);
}

TEST(OracleOptimalPlan, NoAcceptingReachable) {
    auto m = support::two_by_two();
    EXPECT_FALSE(oracle_optimal_plan(m, support::nba_of("<> r1@l1 & [] !r1@l1")).plan);
    auto no_cycle = load_model(R"({"robots":[{"id":1,"states":["l1","l2"],"initial":"l1","edges":[["l1","l2",1]]}]})");
    EXPECT_FALSE(oracle_optimal_plan(no_cycle, support::nba_of("<> r1@l2")).plan);
}

TEST(OracleOptimalPlan, FrozenCostsOnFixedInstances) {
    // values computed independently by walk relaxation over the product graph
    const std::vector<std::pair<std::uint64_t, double>> frozen = {
        {0, 10.5}, {1, 8.5}, {2, 1}, {3, 3.5}, {4, 3.5}, {5, 17.5}, {6, 4.5}, {7, 10.5}};
    auto corpus = support::acceptance_corpus(8);
    ASSERT_EQ(corpus.size(), frozen.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        EXPECT_EQ(corpus[i].seed, frozen[i].first);
        EXPECT_EQ(corpus[i].j_star, frozen[i].second) << "seed " << corpus[i].seed;
    }
}

TEST(OracleOptimalPlan, AgreesWithBruteForce) {
    int compared = 0, enumerated = 0;
    for (std::uint64_t seed = 0; compared < 60; ++seed) {
        auto inst = random_instance({seed, 1 + static_cast<int>(seed % 3), 2, 4, 0.4, seed % 2 == 0});
        auto nba = support::nba_of(inst.formula);
        if (pts_state_count(inst.model) * nba.num_states() > 200) continue;
        ++compared;
        auto g = support::brute_graph(inst.model, nba);
        auto res = oracle_optimal_plan(inst.model, nba);
        auto dp = support::walk_dp_optimum(g);
        ASSERT_EQ(res.plan.has_value(), dp.has_value()) << seed;
        if (dp) {
            EXPECT_NEAR(res.plan->total_cost, *dp, 1e-9) << seed;
            EXPECT_TRUE(validate_plan(inst.model, nba, *res.plan).ok);
        }
        if (g.vertices.size() <= 12) {
            ++enumerated;
            auto simple = support::simple_path_optimum(g);
            ASSERT_EQ(simple.has_value(), dp.has_value());
            if (simple) EXPECT_NEAR(*simple, *dp, 1e-9) << seed;
        }
    }
    EXPECT_GT(enumerated, 5);
}

TEST(Ucs, InitialAccepting) {
    auto m = support::two_by_two();
    auto nba = parse_nba("states: a\ninitial: a\naccepting: a\na -- true --> a\n");
    auto res = ucs_optimal_prefix(m, nba);
    ASSERT_TRUE(res.accepting);
    EXPECT_EQ(res.cost, 0.0);
    EXPECT_EQ(res.expansions, 0u);
}

TEST(Ucs, AgreesWithDijkstra) {
    int both = 0;
    for (std::uint64_t seed = 0; both < 50; ++seed) {
        auto inst = random_instance({seed, 1 + static_cast<int>(seed % 3), 2, 6, 0.4, seed % 2 == 0});
        auto nba = support::nba_of(inst.formula);
        auto dij = oracle_prefix_cost(inst.model, nba, 20'000);
        auto ucs = ucs_optimal_prefix(inst.model, nba);
        ASSERT_EQ(dij.has_value(), ucs.accepting.has_value()) << seed;
        if (!dij) continue;
        ++both;
        EXPECT_EQ(*dij, ucs.cost) << seed;
        EXPECT_TRUE(nba.is_accepting(ucs.accepting->buchi));
        auto dp = support::walk_dp_prefix(support::brute_graph(inst.model, nba));
        if (pts_state_count(inst.model) * nba.num_states() <= 300) EXPECT_NEAR(*dp, ucs.cost, 1e-9);
    }
}

TEST(Ucs, BudgetExceededAtScale) {
    auto m = case1_model(9);
    auto nba = support::nba_of(case1_formula());
    EXPECT_THROW(ucs_optimal_prefix(m, nba, 1), BudgetExceeded);
}
