#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ltlplan {

enum class LtlKind {
    True,
    False,
    Atom,
    Not,
    And,
    Or,
    Implies,
    Next,
    Until,
    Release,
    Eventually,
    Always,
};

/// LTL formula tree. Children count follows the kind: 0 for True/False/Atom,
/// 1 for Not/Next/Eventually/Always, 2 otherwise.
struct LtlAst {
    LtlKind kind = LtlKind::True;
    std::string atom;
    std::vector<LtlAst> children;

    bool operator==(const LtlAst&) const = default;

    const LtlAst& lhs() const { return children.at(0); }
    const LtlAst& rhs() const { return children.at(1); }
};

int arity(LtlKind kind);
bool well_formed(const LtlAst& ast);

namespace ltl {
LtlAst truth();
LtlAst falsity();
LtlAst atom(std::string name);
LtlAst neg(LtlAst a);
LtlAst conj(LtlAst a, LtlAst b);
LtlAst disj(LtlAst a, LtlAst b);
LtlAst implies(LtlAst a, LtlAst b);
LtlAst next(LtlAst a);
LtlAst until(LtlAst a, LtlAst b);
LtlAst release(LtlAst a, LtlAst b);
LtlAst eventually(LtlAst a);
LtlAst always(LtlAst a);
}  // namespace ltl

/// Parses formula text. `#` starts a comment running to the end of the line.
/// Precedence, tightest first: unary operators, U/R (right associative),
/// &, |, -> (right associative).
LtlAst parse_ltl(std::string_view text);

/// Fully parenthesized rendering that parses back to the same tree.
std::string to_string(const LtlAst& ast);

/// Negation normal form over {true, false, atom, !atom, &, |, X, U, R}.
LtlAst to_nnf(const LtlAst& ast);
bool is_nnf(const LtlAst& ast);

/// Atom names in order of first occurrence.
std::vector<std::string> atoms_of(const LtlAst& ast);

using LabelSet = std::set<std::string>;

/// The ultimately periodic word prefix · cycle^ω.
struct LassoWord {
    std::vector<LabelSet> prefix;
    std::vector<LabelSet> cycle;
};

/// Whether prefix · cycle^ω satisfies the formula. Works on any well-formed
/// tree, not just NNF. Throws std::invalid_argument on an empty cycle.
bool eval_lasso(const LtlAst& ast, const LassoWord& word);

}  // namespace ltlplan
