#pragma once

#include "ltlplan/model.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ltlplan {

/// Extra undirected edge between two 1-based region numbers.
using RegionPair = std::pair<int, int>;

struct GridSpec {
    int rows = 3;
    int cols = 3;
    int robots = 1;
    std::vector<int> initial;  // 1-based region per robot; default spreads robots row-major
    std::vector<RegionPair> extra;
    double self_loop_weight = 0.0;
};

/// Regions l1..l{rows*cols} row-major; self-loops; 4-neighbour moves in both
/// directions; weights are Euclidean distances between cell centres on a unit grid.
MultiRobotModel grid_model(const GridSpec& spec);

/// 3x3 grid plus the diagonals l1-l5, l3-l5, l5-l9: 9 regions, 39 transitions per robot.
MultiRobotModel case1_model(int robots = 9);
/// 4x4 grid plus the diagonals l1-l6, l6-l11, l11-l16: 16 regions, 70 transitions per robot.
MultiRobotModel case2_model();

struct Team {
    std::vector<int> robots;
    std::string region;
};

/// Parses "1,2@l5;2,3,4@l1".
std::vector<Team> parse_teams(const std::string& text);
/// Conjunction of `[] <> (r<i>@<region> & ...)`, one per team.
std::string intermittent_formula(const std::vector<Team>& teams);

std::string case1_formula();
std::string case2_formula();

struct RandomSpec {
    std::uint64_t seed = 0;
    int robots = 2;
    int min_states = 3;
    int max_states = 5;
    double edge_probability = 0.4;
    bool zero_self_loops = true;
};

struct RandomInstance {
    MultiRobotModel model;
    std::string formula;
};

/// Random strongly connected robots (a ring plus random chords, all with
/// self-loops), small-decimal weights, and a formula from a fixed template set.
RandomInstance random_instance(const RandomSpec& spec);

}  // namespace ltlplan
