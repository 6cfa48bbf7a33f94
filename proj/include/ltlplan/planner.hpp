#pragma once

#include "ltlplan/tree.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ltlplan {

/// Prefix-suffix plan over PTS states. The suffix ends at prefix.back() and
/// repeats forever; a single-entry suffix is a self-loop at prefix.back().
struct Plan {
    std::vector<PtsState> prefix;
    std::vector<PtsState> suffix;
    double prefix_cost = 0;
    double suffix_cost = 0;
    double total_cost = 0;

    struct Provenance {
        std::uint32_t initial_buchi = 0;
        ProductState accepting;
        ProductState suffix_end;
        bool trivial_suffix = false;
    } provenance;

    std::vector<ProductState> product_prefix;  // initial state to accepting state
    std::vector<ProductState> product_suffix;  // accepting state around to itself
};

struct PlannerConfig {
    std::uint64_t n_pre = 1000;
    std::uint64_t n_suf = 1000;
    SamplerConfig sampler;
    unsigned workers = 1;
    bool keep_stats = true;
};

struct TreeReport {
    GoalKind kind = GoalKind::Prefix;
    std::uint32_t initial_buchi = 0;
    std::size_t accepting_index = 0;  // suffix trees only
    ProductState root;
    std::size_t tree_size = 0;
    std::size_t goals = 0;
    std::optional<std::uint64_t> first_goal_iteration;
    std::uint64_t growth_violations = 0;
    std::uint64_t bound_violations = 0;
    std::vector<IterationStats> stats;
};

struct SynthesisResult {
    std::optional<Plan> plan;
    std::vector<TreeReport> trees;  // prefix tree of each initial state, then its suffix trees
    std::uint64_t growth_violations = 0;
    std::uint64_t bound_violations = 0;
    bool prefix_goal_found = false;
};

SynthesisResult synthesize(const MultiRobotModel& model, const Nba& nba, const PlannerConfig& cfg);

struct PlanCheck {
    bool ok = true;
    std::string reason;
};

/// Transition feasibility, cost re-summation within 1e-9 and acceptance of the
/// induced lasso word.
PlanCheck validate_plan(const MultiRobotModel& model, const Nba& nba, const Plan& plan);

/// Label trace of the plan as a lasso word.
LassoWord plan_word(const MultiRobotModel& model, const Plan& plan);

/// Builds PTS sequences and costs from product-level paths. `product_suffix`
/// runs from the accepting state back to itself (at least two entries).
Plan assemble_plan(const MultiRobotModel& model, std::vector<ProductState> product_prefix,
                   std::vector<ProductState> product_suffix, std::uint32_t initial_buchi, bool trivial_suffix);

}  // namespace ltlplan
