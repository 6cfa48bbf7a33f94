#pragma once

#include "ltlplan/planner.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace ltlplan {

/// Fully enumerated product automaton. Vertex id = pts_key * |Q_B| + buchi,
/// with pts_key the mixed-radix index of the PTS state (robot 1 most significant).
struct ExplicitPba {
    struct Arc {
        std::uint32_t to;
        double weight;
    };

    std::uint32_t num_buchi = 0;
    std::vector<ProductState> vertices;
    std::vector<std::vector<Arc>> adj;
    std::vector<std::uint32_t> initial;  // NBA initial-state order
    std::vector<std::uint32_t> accepting;
    std::size_t num_edges = 0;
};

constexpr std::uint64_t kDefaultMaxStates = 1'000'000;

/// Throws CapacityExceeded, carrying the exact product size, when it exceeds `max_states`.
ExplicitPba build_explicit_pba(const MultiRobotModel& model, const Nba& nba,
                               std::uint64_t max_states = kDefaultMaxStates);

struct OracleResult {
    std::optional<Plan> plan;
    std::size_t vertices = 0;
    std::size_t edges = 0;
};

/// Shortest prefix to every reachable accepting vertex plus the shortest
/// closed walk through it; returns the plan minimizing their sum.
OracleResult oracle_optimal_plan(const MultiRobotModel& model, const Nba& nba,
                                 std::uint64_t max_states = kDefaultMaxStates);

/// Cheapest path cost from an initial vertex to any accepting vertex, by Dijkstra
/// on the explicit product; nothing when no accepting vertex is reachable.
std::optional<double> oracle_prefix_cost(const MultiRobotModel& model, const Nba& nba,
                                         std::uint64_t max_states = kDefaultMaxStates);

struct UcsResult {
    std::optional<ProductState> accepting;
    double cost = 0;
    std::uint64_t expansions = 0;
};

/// Uniform-cost search over lazily generated product successors. Throws
/// BudgetExceeded after `max_expansions` expansions without settling an accepting state.
UcsResult ucs_optimal_prefix(const MultiRobotModel& model, const Nba& nba, std::uint64_t max_expansions = 10'000'000);

}  // namespace ltlplan
