#pragma once

#include "ltlplan/planner.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace ltlplan {

/// Plan as JSON text with region names and Büchi state names.
std::string plan_to_json(const MultiRobotModel& model, const Nba& nba, const Plan& plan);

/// Shortest round-trip decimal; "inf" for infinity.
std::string format_number(double v);

inline constexpr const char* kStatsHeader = "iteration,tree_size,rejected,extended,rewired,best_goal_cost,elapsed_ms";

/// One row per iteration of every tree, trees in report order. elapsed_ms
/// stays empty unless timing was on. Flushes every `flush_every` rows when nonzero.
void write_stats_csv(std::ostream& out, const std::vector<TreeReport>& trees, std::size_t flush_every = 0);

}  // namespace ltlplan
