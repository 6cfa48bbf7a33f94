#pragma once

#include "ltlplan/automaton.hpp"
#include "ltlplan/ltl.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace ltlplan {

struct TranslateOptions {
    std::size_t max_states = 1'000'000;
};

/// Transition-based generalized Büchi automaton. One acceptance set per
/// until-subformula; a run is accepting when it takes edges of every set
/// infinitely often.
struct Tgba {
    struct Edge {
        std::uint32_t src = 0;
        Guard guard;
        std::uint32_t dst = 0;
        std::vector<std::uint32_t> marks;  // ascending set indices
    };

    std::vector<std::string> state_names;  // obligation sets, printed
    std::uint32_t initial = 0;
    std::uint32_t num_sets = 0;
    std::vector<Edge> edges;
    std::vector<std::string> alphabet;

    std::size_t num_states() const { return state_names.size(); }
};

Tgba ltl_to_tgba(const LtlAst& ast, const TranslateOptions& opts = {});
bool tgba_accepts_lasso(const Tgba& tgba, const LassoWord& word);

/// Counting construction, one counter range per SCC over the sets that SCC
/// can actually miss. States that cannot reach an accepting cycle are dropped.
Nba degeneralize(const Tgba& tgba, const TranslateOptions& opts = {});

Nba ltl_to_nba(const LtlAst& ast, const TranslateOptions& opts = {});

}  // namespace ltlplan
