#pragma once

#include "ltlplan/ltl.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ltlplan {

/// Boolean edge guard over atom names.
struct Guard {
    enum class Kind { True, False, Atom, Not, And, Or };

    Kind kind = Kind::True;
    std::string atom;
    std::vector<Guard> children;

    bool operator==(const Guard&) const = default;

    static Guard truth();
    static Guard falsity();
    static Guard atom_ref(std::string name);
    static Guard negation(Guard g);
    static Guard conjunction(std::vector<Guard> parts);
    static Guard disjunction(std::vector<Guard> parts);

    /// Atom true iff present in `labels`.
    bool eval(const LabelSet& labels) const;
};

/// Parses guard text: atoms, true, false, !, &, |, parentheses.
Guard parse_guard(std::string_view text);
std::string to_string(const Guard& g);
void collect_atoms(const Guard& g, std::vector<std::string>& out);

struct NbaEdge {
    std::uint32_t src = 0;
    Guard guard;
    std::uint32_t dst = 0;

    bool operator==(const NbaEdge&) const = default;
};

/// Nondeterministic Büchi automaton. States are identified by index; names
/// are descriptive only.
struct Nba {
    std::vector<std::string> state_names;
    std::vector<std::uint32_t> initial;
    std::vector<std::uint32_t> accepting;
    std::vector<NbaEdge> edges;
    std::vector<std::string> alphabet;

    std::size_t num_states() const { return state_names.size(); }
    bool is_accepting(std::uint32_t q) const;
    bool is_initial(std::uint32_t q) const;

    /// Indices into `edges` leaving `q`, in file order.
    std::vector<std::size_t> out_edges(std::uint32_t q) const;

    bool operator==(const Nba&) const = default;
};

/// Throws FormatError when indices are out of range, the initial set is
/// empty, or a guard names an atom outside the alphabet.
void validate(const Nba& nba);

/// Evaluates `guard` against `labels`, rejecting atoms the automaton does not know.
bool guard_sat(const Nba& nba, const Guard& guard, const LabelSet& labels);

/// States reachable from `q` in one step reading `labels`, ascending, no duplicates.
std::vector<std::uint32_t> nba_successors(const Nba& nba, std::uint32_t q, const LabelSet& labels);

/// Whether some run over prefix · cycle^ω visits an accepting state infinitely often.
bool nba_accepts_lasso(const Nba& nba, const LassoWord& word);

/// Line-oriented exchange format:
///
///     # comment
///     states: q0 q1
///     initial: q0
///     accepting: q1
///     alphabet: a b
///     q0 -- a & !b --> q1
Nba parse_nba(std::string_view text);
std::string emit_nba(const Nba& nba);

}  // namespace ltlplan
