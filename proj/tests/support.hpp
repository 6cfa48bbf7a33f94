#pragma once

#include "ltlplan/ltl_translate.hpp"
#include "ltlplan/oracle.hpp"
#include "ltlplan/scenario.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace support {

using namespace ltlplan;

/// Every lasso word with prefix length <= max_prefix and cycle length in
/// [1, max_cycle], letters drawn from the subsets of `atoms`.
std::vector<LassoWord> all_lassos(const std::vector<std::string>& atoms, std::size_t max_prefix,
                                  std::size_t max_cycle);

/// Formulas over a, b, c used for translator checks.
std::vector<std::string> translator_corpus();

struct CorpusCase {
    std::uint64_t seed = 0;
    RandomInstance inst;
    Nba nba;
    double j_star = 0;
    std::size_t product_states = 0;
};

/// Random instances with 1 to 3 robots, at most 6 states each, an NBA of at
/// most 12 states, an explicit product of at most 1e4 states and a feasible
/// plan. Deterministic.
std::vector<CorpusCase> acceptance_corpus(std::size_t count);

/// Product graph built pair by pair from pts_transition and nba_successors.
struct BruteGraph {
    std::vector<ProductState> vertices;
    std::vector<std::vector<std::pair<std::uint32_t, double>>> adj;
    std::vector<std::uint32_t> initial;
    std::vector<std::uint32_t> accepting;
};
BruteGraph brute_graph(const MultiRobotModel& model, const Nba& nba);

/// Optimal prefix plus cycle cost by min-plus relaxation over walks of
/// every length up to |V|.
std::optional<double> walk_dp_optimum(const BruteGraph& g);
/// Same quantity by enumerating every simple path and simple cycle.
std::optional<double> simple_path_optimum(const BruteGraph& g);
/// Cheapest initial-to-accepting path, by min-plus relaxation.
std::optional<double> walk_dp_prefix(const BruteGraph& g);

/// Two robots on two states each, both with self-loops of weight 0 and
/// moves of weight 1.5 (robot 1) and 2.0 (robot 2).
MultiRobotModel two_by_two();

Nba nba_of(const std::string& formula);

}  // namespace support
