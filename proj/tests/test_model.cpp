#include "ltlplan/errors.hpp"
#include "ltlplan/model.hpp"
#include "ltlplan/scenario.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace ltlplan;

namespace {

std::string one_robot(const std::string& edges, const std::string& extra = "") {
    return R"({"robots":[{"id":1,"states":["a","b"],"initial":"a","edges":[)" + edges + "]" + extra + "}]}";
}

// Every PTS state of a small model.
std::vector<PtsState> all_states(const MultiRobotModel& m) {
    std::vector<PtsState> out{{}};
    for (const auto& r : m.robots) {
        std::vector<PtsState> next;
        for (const auto& p : out)
            for (std::uint32_t s = 0; s < r.num_states(); ++s) {
                auto q = p;
                q.push_back(s);
                next.push_back(q);
            }
        out = next;
    }
    return out;
}

}  // namespace

TEST(LoadModel, TwoRobots) {
    auto m = support::two_by_two();
    EXPECT_EQ(m.num_robots(), 2u);
    EXPECT_EQ(m.robots[0].num_states(), 2u);
    EXPECT_EQ(m.robots[1].num_states(), 2u);
    EXPECT_EQ(initial_state(m), (PtsState{0, 1}));
    EXPECT_TRUE(m.warnings.empty());
    EXPECT_EQ(m.alphabet, (std::vector<std::string>{"r1@l1", "r1@l2", "r2@l1", "r2@l2"}));
}

TEST(LoadModel, Errors) {
    EXPECT_THROW(load_model(one_robot(R"(["a","b",-1])")), NegativeWeight);
    EXPECT_THROW(load_model(one_robot(R"(["a","c",1])")), DanglingEdge);
    EXPECT_THROW(load_model(R"({"robots":[{"id":1,"states":["a"],"edges":[]}]})"), MissingInitial);
    EXPECT_THROW(load_model(R"({"robots":[{"id":1,"states":["a"],"initial":"z","edges":[]}]})"), MissingInitial);
    EXPECT_THROW(load_model("{"), FormatError);
    EXPECT_THROW(load_model(R"({"robots":[]})"), FormatError);
    EXPECT_THROW(load_model(one_robot(R"(["a","b",1],["a","b",2])")), FormatError);
    EXPECT_THROW(load_model(one_robot(R"(["a","b","1.x"])")), FormatError);
    EXPECT_THROW(load_model(one_robot(R"(["a","b",true])")), FormatError);
}

TEST(LoadModel, DecimalStringWeightsAndExtraLabels) {
    auto m = load_model(one_robot(R"(["a","b","0.1"],["b","a",0.2],["a","a",0])", R"(,"labels":{"b":["charging"]})"));
    EXPECT_EQ(m.robots[0].weight(0, 1), 0.1);
    EXPECT_EQ(m.robots[0].weight(1, 0), 0.2);
    EXPECT_EQ(pts_label(m, {1}), (LabelSet{"charging", "r1@b"}));
}

TEST(LoadModel, WarnsAboutMissingSelfLoops) {
    auto m = load_model(one_robot(R"(["a","b",1],["b","a",1],["a","a",0])"));
    ASSERT_EQ(m.warnings.size(), 1u);
    EXPECT_NE(m.warnings[0].find("b"), std::string::npos);
}

TEST(LoadModel, RoundTripThroughJson) {
    auto inst = random_instance({11, 3, 2, 5, 0.5, false});
    auto again = load_model(model_to_json(inst.model));
    ASSERT_EQ(again.num_robots(), inst.model.num_robots());
    for (std::size_t i = 0; i < again.num_robots(); ++i) {
        EXPECT_EQ(again.robots[i].states, inst.model.robots[i].states);
        EXPECT_EQ(again.robots[i].initial, inst.model.robots[i].initial);
        EXPECT_EQ(again.robots[i].labels, inst.model.robots[i].labels);
        ASSERT_EQ(again.robots[i].edges.size(), inst.model.robots[i].edges.size());
        for (std::size_t e = 0; e < again.robots[i].edges.size(); ++e) {
            EXPECT_EQ(again.robots[i].edges[e].src, inst.model.robots[i].edges[e].src);
            EXPECT_EQ(again.robots[i].edges[e].dst, inst.model.robots[i].edges[e].dst);
            EXPECT_EQ(again.robots[i].edges[e].weight, inst.model.robots[i].edges[e].weight);
        }
    }
    EXPECT_EQ(model_to_json(again), model_to_json(inst.model));
}

TEST(LoadModel, CaseOneGrid) {
    auto m = case1_model(9);
    ASSERT_EQ(m.num_robots(), 9u);
    for (const auto& r : m.robots) {
        EXPECT_EQ(r.num_states(), 9u);
        EXPECT_EQ(r.edges.size(), 39u);
    }
    EXPECT_EQ(pts_state_count(m), 387420489u);
    auto again = load_model(model_to_json(m));
    EXPECT_EQ(again.robots[4].edges.size(), 39u);
}

TEST(LoadModel, CaseTwoGrid) {
    auto m = case2_model();
    ASSERT_EQ(m.num_robots(), 2u);
    for (const auto& r : m.robots) {
        EXPECT_EQ(r.num_states(), 16u);
        EXPECT_EQ(r.edges.size(), 70u);
    }
    EXPECT_EQ(initial_state(m), (PtsState{0, 15}));
}

TEST(PtsTransition, Examples) {
    auto m = support::two_by_two();
    EXPECT_TRUE(pts_transition(m, {0, 1}, {0, 1}));
    EXPECT_TRUE(pts_transition(m, {0, 1}, {1, 0}));
    auto one_way = load_model(R"({"robots":[
        {"id":1,"states":["a","b"],"initial":"a","edges":[["a","a",0],["a","b",1]]},
        {"id":2,"states":["a","b"],"initial":"a","edges":[["a","b",1],["b","a",1]]}]})");
    EXPECT_FALSE(pts_transition(one_way, {1, 0}, {0, 1}));
    EXPECT_FALSE(pts_transition(one_way, {0, 0}, {0, 0}));
    EXPECT_TRUE(pts_transition(one_way, {0, 0}, {0, 1}));
}

TEST(PtsWeight, Examples) {
    auto m = support::two_by_two();
    EXPECT_EQ(pts_weight(m, {0, 0}, {1, 1}), 3.5);
    EXPECT_EQ(pts_weight(m, {0, 1}, {0, 1}), 0.0);
    auto one_way = load_model(one_robot(R"(["a","b",1])"));
    EXPECT_THROW(pts_weight(one_way, {1}, {0}), InvalidTransition);
}

TEST(PtsLabel, Examples) {
    GridSpec spec;
    spec.robots = 2;
    spec.initial = {5, 1};
    auto m = grid_model(spec);
    EXPECT_EQ(pts_label(m, initial_state(m)), (LabelSet{"r1@l5", "r2@l1"}));
    auto solo = load_model(one_robot(R"(["a","b",1])"));
    EXPECT_EQ(pts_label(solo, {1}), LabelSet{"r1@b"});
    auto nine = case1_model(9);
    EXPECT_EQ(pts_label(nine, {0, 1, 2, 3, 4, 5, 6, 7, 8}).size(), 9u);
}

TEST(RobotReachable, Examples) {
    auto isolated = load_model(one_robot(R"(["a","a",0])"));
    EXPECT_TRUE(robot_reachable(isolated, 0, 1).empty());
    auto m = load_model(R"({"robots":[{"id":1,"states":["a","b","c"],"initial":"a",
        "edges":[["a","a",0],["a","b",1],["a","c",1]]}]})");
    EXPECT_EQ(robot_reachable(m, 0, 0).size(), 3u);
    auto grid = case1_model(1);
    // centre l5: self, four neighbours, three diagonals
    EXPECT_EQ(robot_reachable(grid, 0, 4), (std::vector<std::uint32_t>{0, 1, 2, 3, 4, 5, 7, 8}));
}

TEST(PtsProperties, BruteForceOnRandomModels) {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        auto inst = random_instance({seed, 1 + static_cast<int>(seed % 3), 2, 5, 0.35, seed % 2 == 0});
        const auto& m = inst.model;
        auto states = all_states(m);
        for (const auto& q : states) {
            auto label = pts_label(m, q);
            EXPECT_EQ(label.size(), m.num_robots());
            for (const auto& q2 : states) {
                bool every = true;
                double sum = 0;
                for (std::size_t i = 0; i < m.num_robots(); ++i) {
                    bool found = false;
                    for (const auto& e : m.robots[i].edges)
                        if (e.src == q[i] && e.dst == q2[i]) {
                            found = true;
                            sum += e.weight;
                        }
                    every = every && found;
                }
                ASSERT_EQ(pts_transition(m, q, q2), every);
                bool in_product = true;
                for (std::size_t i = 0; i < m.num_robots(); ++i) {
                    auto r = robot_reachable(m, i, q[i]);
                    in_product = in_product && std::find(r.begin(), r.end(), q2[i]) != r.end();
                }
                ASSERT_EQ(in_product, every);
                if (every) ASSERT_EQ(pts_weight(m, q, q2), sum);
            }
        }
    }
}

TEST(PtsProperties, RobotOrderPermutation) {
    auto inst = random_instance({5, 3, 2, 4, 0.4, true});
    auto permuted = inst.model;
    std::reverse(permuted.robots.begin(), permuted.robots.end());
    finalize_model(permuted);
    auto states = all_states(inst.model);
    for (const auto& q : states) {
        PtsState rq(q.rbegin(), q.rend());
        EXPECT_EQ(pts_label(inst.model, q), pts_label(permuted, rq));
        for (const auto& q2 : states) {
            PtsState rq2(q2.rbegin(), q2.rend());
            ASSERT_EQ(pts_transition(inst.model, q, q2), pts_transition(permuted, rq, rq2));
            if (pts_transition(inst.model, q, q2)) {
                double a = pts_weight(inst.model, q, q2), b = pts_weight(permuted, rq, rq2);
                EXPECT_NEAR(a, b, 1e-12);
            }
        }
    }
}

TEST(Scenario, Teams) {
    auto teams = parse_teams("1,2@l5;2,3,4@l1");
    ASSERT_EQ(teams.size(), 2u);
    EXPECT_EQ(teams[1].robots, (std::vector<int>{2, 3, 4}));
    auto f = intermittent_formula(teams);
    EXPECT_NE(f.find("[] <> (r1@l5 & r2@l5)"), std::string::npos);
    EXPECT_EQ(f, "[] <> (r1@l5 & r2@l5) & [] <> (r2@l1 & r3@l1 & r4@l1)");
    EXPECT_THROW(parse_teams("1,2"), std::invalid_argument);
    EXPECT_THROW(parse_teams("x@l1"), std::invalid_argument);
    EXPECT_THROW(parse_teams("1@"), std::invalid_argument);
}

TEST(Scenario, RandomInstancesAreDeterministic) {
    for (std::uint64_t s = 0; s < 5; ++s) {
        RandomSpec spec;
        spec.seed = s;
        auto a = random_instance(spec), b = random_instance(spec);
        EXPECT_EQ(model_to_json(a.model), model_to_json(b.model));
        EXPECT_EQ(a.formula, b.formula);
        EXPECT_NO_THROW(parse_ltl(a.formula));
    }
}
