#include "ltlplan/ltl.hpp"

#include "ltlplan/errors.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <utility>

namespace ltlplan {

int arity(LtlKind kind) {
    switch (kind) {
        case LtlKind::True:
        case LtlKind::False:
        case LtlKind::Atom:
            return 0;
        case LtlKind::Not:
        case LtlKind::Next:
        case LtlKind::Eventually:
        case LtlKind::Always:
            return 1;
        default:
            return 2;
    }
}

bool well_formed(const LtlAst& ast) {
    if (static_cast<int>(ast.children.size()) != arity(ast.kind)) return false;
    if (ast.kind == LtlKind::Atom && ast.atom.empty()) return false;
    return std::all_of(ast.children.begin(), ast.children.end(), well_formed);
}

namespace ltl {

namespace {
LtlAst make(LtlKind k, std::vector<LtlAst> children) {
    LtlAst a;
    a.kind = k;
    a.children = std::move(children);
    return a;
}
}  // namespace

LtlAst truth() { return make(LtlKind::True, {}); }
LtlAst falsity() { return make(LtlKind::False, {}); }
LtlAst atom(std::string name) {
    LtlAst a;
    a.kind = LtlKind::Atom;
    a.atom = std::move(name);
    return a;
}
LtlAst neg(LtlAst a) { return make(LtlKind::Not, {std::move(a)}); }
LtlAst conj(LtlAst a, LtlAst b) { return make(LtlKind::And, {std::move(a), std::move(b)}); }
LtlAst disj(LtlAst a, LtlAst b) { return make(LtlKind::Or, {std::move(a), std::move(b)}); }
LtlAst implies(LtlAst a, LtlAst b) { return make(LtlKind::Implies, {std::move(a), std::move(b)}); }
LtlAst next(LtlAst a) { return make(LtlKind::Next, {std::move(a)}); }
LtlAst until(LtlAst a, LtlAst b) { return make(LtlKind::Until, {std::move(a), std::move(b)}); }
LtlAst release(LtlAst a, LtlAst b) { return make(LtlKind::Release, {std::move(a), std::move(b)}); }
LtlAst eventually(LtlAst a) { return make(LtlKind::Eventually, {std::move(a)}); }
LtlAst always(LtlAst a) { return make(LtlKind::Always, {std::move(a)}); }

}  // namespace ltl

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok {
    Ident,
    True,
    False,
    Not,
    And,
    Or,
    Implies,
    Next,
    Until,
    Release,
    Eventually,
    Always,
    LParen,
    RParen,
    End,
};

struct Token {
    Tok kind;
    std::size_t offset;
    std::string text;
};

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '@';
}

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (c == '#') {
            while (i < s.size() && s[i] != '\n') ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (ident_char(c)) {
            while (i < s.size() && ident_char(s[i])) ++i;
            std::string word(s.substr(start, i - start));
            Tok k = Tok::Ident;
            if (word == "true") k = Tok::True;
            else if (word == "false") k = Tok::False;
            else if (word == "X") k = Tok::Next;
            else if (word == "U") k = Tok::Until;
            else if (word == "R") k = Tok::Release;
            else if (word == "F") k = Tok::Eventually;
            else if (word == "G") k = Tok::Always;
            out.push_back({k, start, std::move(word)});
            continue;
        }
        auto two = s.substr(i, 2);
        if (two == "&&") { out.push_back({Tok::And, start, "&&"}); i += 2; continue; }
        if (two == "||") { out.push_back({Tok::Or, start, "||"}); i += 2; continue; }
        if (two == "->") { out.push_back({Tok::Implies, start, "->"}); i += 2; continue; }
        if (two == "<>") { out.push_back({Tok::Eventually, start, "<>"}); i += 2; continue; }
        if (two == "[]") { out.push_back({Tok::Always, start, "[]"}); i += 2; continue; }
        switch (c) {
            case '!': out.push_back({Tok::Not, start, "!"}); ++i; continue;
            case '&': out.push_back({Tok::And, start, "&"}); ++i; continue;
            case '|': out.push_back({Tok::Or, start, "|"}); ++i; continue;
            case '(': out.push_back({Tok::LParen, start, "("}); ++i; continue;
            case ')': out.push_back({Tok::RParen, start, ")"}); ++i; continue;
            default: break;
        }
        // Swallow the run of punctuation so the message names the whole operator.
        while (i < s.size() && !ident_char(s[i]) && !std::isspace(static_cast<unsigned char>(s[i])) &&
               s[i] != '(' && s[i] != ')')
            ++i;
        throw UnknownOperator(start, std::string(s.substr(start, i - start)));
    }
    out.push_back({Tok::End, s.size(), ""});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    LtlAst parse() {
        LtlAst result = parse_implies();
        if (peek().kind != Tok::End) fail({"&", "|", "->", "U", "R", "end of input"});
        return result;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& take() { return toks_[pos_++]; }

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        const Token& t = peek();
        std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
        throw SyntaxError(t.offset, std::move(expected), found);
    }

    LtlAst parse_implies() {
        LtlAst lhs = parse_or();
        if (peek().kind == Tok::Implies) {
            take();
            return ltl::implies(std::move(lhs), parse_implies());
        }
        return lhs;
    }

    LtlAst parse_or() {
        LtlAst lhs = parse_and();
        while (peek().kind == Tok::Or) {
            take();
            lhs = ltl::disj(std::move(lhs), parse_and());
        }
        return lhs;
    }

    LtlAst parse_and() {
        LtlAst lhs = parse_binary_temporal();
        while (peek().kind == Tok::And) {
            take();
            lhs = ltl::conj(std::move(lhs), parse_binary_temporal());
        }
        return lhs;
    }

    LtlAst parse_binary_temporal() {
        LtlAst lhs = parse_unary();
        if (peek().kind == Tok::Until) {
            take();
            return ltl::until(std::move(lhs), parse_binary_temporal());
        }
        if (peek().kind == Tok::Release) {
            take();
            return ltl::release(std::move(lhs), parse_binary_temporal());
        }
        return lhs;
    }

    LtlAst parse_unary() {
        switch (peek().kind) {
            case Tok::Not: take(); return ltl::neg(parse_unary());
            case Tok::Next: take(); return ltl::next(parse_unary());
            case Tok::Eventually: take(); return ltl::eventually(parse_unary());
            case Tok::Always: take(); return ltl::always(parse_unary());
            default: return parse_primary();
        }
    }

    LtlAst parse_primary() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::Ident: return ltl::atom(take().text);
            case Tok::True: take(); return ltl::truth();
            case Tok::False: take(); return ltl::falsity();
            case Tok::LParen: {
                take();
                LtlAst inner = parse_implies();
                if (peek().kind != Tok::RParen) fail({")", "&", "|", "->", "U", "R"});
                take();
                return inner;
            }
            default:
                fail({"atom", "true", "false", "(", "!", "X", "F", "G"});
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

LtlAst parse_ltl(std::string_view text) {
    return Parser(tokenize(text)).parse();
}

// ---------------------------------------------------------------------------
// Printing

std::string to_string(const LtlAst& a) {
    switch (a.kind) {
        case LtlKind::True: return "true";
        case LtlKind::False: return "false";
        case LtlKind::Atom: return a.atom;
        case LtlKind::Not: return "!" + to_string(a.lhs());
        case LtlKind::Next: return "X " + to_string(a.lhs());
        case LtlKind::Eventually: return "F " + to_string(a.lhs());
        case LtlKind::Always: return "G " + to_string(a.lhs());
        case LtlKind::And: return "(" + to_string(a.lhs()) + " & " + to_string(a.rhs()) + ")";
        case LtlKind::Or: return "(" + to_string(a.lhs()) + " | " + to_string(a.rhs()) + ")";
        case LtlKind::Implies: return "(" + to_string(a.lhs()) + " -> " + to_string(a.rhs()) + ")";
        case LtlKind::Until: return "(" + to_string(a.lhs()) + " U " + to_string(a.rhs()) + ")";
        case LtlKind::Release: return "(" + to_string(a.lhs()) + " R " + to_string(a.rhs()) + ")";
    }
    return {};
}

// ---------------------------------------------------------------------------
// Negation normal form

namespace {

LtlAst nnf(const LtlAst& a, bool negated) {
    using namespace ltl;
    switch (a.kind) {
        case LtlKind::True: return negated ? falsity() : truth();
        case LtlKind::False: return negated ? truth() : falsity();
        case LtlKind::Atom: return negated ? neg(a) : a;
        case LtlKind::Not: return nnf(a.lhs(), !negated);
        case LtlKind::And:
            return negated ? disj(nnf(a.lhs(), true), nnf(a.rhs(), true))
                           : conj(nnf(a.lhs(), false), nnf(a.rhs(), false));
        case LtlKind::Or:
            return negated ? conj(nnf(a.lhs(), true), nnf(a.rhs(), true))
                           : disj(nnf(a.lhs(), false), nnf(a.rhs(), false));
        case LtlKind::Implies:
            return negated ? conj(nnf(a.lhs(), false), nnf(a.rhs(), true))
                           : disj(nnf(a.lhs(), true), nnf(a.rhs(), false));
        case LtlKind::Next: return next(nnf(a.lhs(), negated));
        case LtlKind::Until:
            return negated ? release(nnf(a.lhs(), true), nnf(a.rhs(), true))
                           : until(nnf(a.lhs(), false), nnf(a.rhs(), false));
        case LtlKind::Release:
            return negated ? until(nnf(a.lhs(), true), nnf(a.rhs(), true))
                           : release(nnf(a.lhs(), false), nnf(a.rhs(), false));
        case LtlKind::Eventually:
            // F a = true U a,  !F a = false R !a
            return negated ? release(falsity(), nnf(a.lhs(), true)) : until(truth(), nnf(a.lhs(), false));
        case LtlKind::Always:
            // G a = false R a, !G a = true U !a
            return negated ? until(truth(), nnf(a.lhs(), true)) : release(falsity(), nnf(a.lhs(), false));
    }
    return a;
}

}  // namespace

LtlAst to_nnf(const LtlAst& ast) { return nnf(ast, false); }

bool is_nnf(const LtlAst& a) {
    switch (a.kind) {
        case LtlKind::Implies:
        case LtlKind::Eventually:
        case LtlKind::Always:
            return false;
        case LtlKind::Not:
            return a.lhs().kind == LtlKind::Atom;
        default:
            return std::all_of(a.children.begin(), a.children.end(), is_nnf);
    }
}

std::vector<std::string> atoms_of(const LtlAst& ast) {
    std::vector<std::string> out;
    auto visit = [&](auto&& self, const LtlAst& a) -> void {
        if (a.kind == LtlKind::Atom && std::find(out.begin(), out.end(), a.atom) == out.end())
            out.push_back(a.atom);
        for (const auto& c : a.children) self(self, c);
    };
    visit(visit, ast);
    return out;
}

// ---------------------------------------------------------------------------
// Lasso evaluation

namespace {

class LassoEvaluator {
public:
    explicit LassoEvaluator(const LassoWord& w) : word_(w), n_(w.prefix.size() + w.cycle.size()) {}

    std::vector<bool> eval(const LtlAst& a) const {
        std::vector<bool> v(n_);
        switch (a.kind) {
            case LtlKind::True:
                v.assign(n_, true);
                break;
            case LtlKind::False:
                break;
            case LtlKind::Atom:
                for (std::size_t i = 0; i < n_; ++i) v[i] = letter(i).count(a.atom) > 0;
                break;
            case LtlKind::Not: {
                auto x = eval(a.lhs());
                for (std::size_t i = 0; i < n_; ++i) v[i] = !x[i];
                break;
            }
            case LtlKind::And:
            case LtlKind::Or:
            case LtlKind::Implies: {
                auto x = eval(a.lhs());
                auto y = eval(a.rhs());
                for (std::size_t i = 0; i < n_; ++i) {
                    if (a.kind == LtlKind::And) v[i] = x[i] && y[i];
                    else if (a.kind == LtlKind::Or) v[i] = x[i] || y[i];
                    else v[i] = !x[i] || y[i];
                }
                break;
            }
            case LtlKind::Next: {
                auto x = eval(a.lhs());
                for (std::size_t i = 0; i < n_; ++i) v[i] = x[succ(i)];
                break;
            }
            case LtlKind::Until:
                v = until(eval(a.lhs()), eval(a.rhs()));
                break;
            case LtlKind::Eventually:
                v = until(std::vector<bool>(n_, true), eval(a.lhs()));
                break;
            case LtlKind::Release:
                v = release(eval(a.lhs()), eval(a.rhs()));
                break;
            case LtlKind::Always:
                v = release(std::vector<bool>(n_, false), eval(a.lhs()));
                break;
        }
        return v;
    }

private:
    const LabelSet& letter(std::size_t i) const {
        return i < word_.prefix.size() ? word_.prefix[i] : word_.cycle[i - word_.prefix.size()];
    }
    std::size_t succ(std::size_t i) const { return i + 1 < n_ ? i + 1 : word_.prefix.size(); }

    // Least fixpoint of v = b | (a & X v).
    std::vector<bool> until(const std::vector<bool>& a, const std::vector<bool>& b) const {
        std::vector<bool> v(n_, false);
        for (bool changed = true; changed;) {
            changed = false;
            for (std::size_t k = n_; k-- > 0;) {
                bool nv = b[k] || (a[k] && v[succ(k)]);
                if (nv != v[k]) {
                    v[k] = nv;
                    changed = true;
                }
            }
        }
        return v;
    }

    // Greatest fixpoint of v = b & (a | X v).
    std::vector<bool> release(const std::vector<bool>& a, const std::vector<bool>& b) const {
        std::vector<bool> v(n_, true);
        for (bool changed = true; changed;) {
            changed = false;
            for (std::size_t k = n_; k-- > 0;) {
                bool nv = b[k] && (a[k] || v[succ(k)]);
                if (nv != v[k]) {
                    v[k] = nv;
                    changed = true;
                }
            }
        }
        return v;
    }

    const LassoWord& word_;
    std::size_t n_;
};

}  // namespace

bool eval_lasso(const LtlAst& ast, const LassoWord& word) {
    if (word.cycle.empty()) throw std::invalid_argument("lasso cycle must be non-empty");
    return LassoEvaluator(word).eval(ast)[0];
}

}  // namespace ltlplan
