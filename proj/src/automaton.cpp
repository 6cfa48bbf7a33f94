#include "ltlplan/automaton.hpp"

#include "ltlplan/detail/scc.hpp"
#include "ltlplan/errors.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

namespace ltlplan {

// ---------------------------------------------------------------------------
// Guards

Guard Guard::truth() { return Guard{}; }

Guard Guard::falsity() {
    Guard g;
    g.kind = Kind::False;
    return g;
}

Guard Guard::atom_ref(std::string name) {
    Guard g;
    g.kind = Kind::Atom;
    g.atom = std::move(name);
    return g;
}

Guard Guard::negation(Guard inner) {
    Guard g;
    g.kind = Kind::Not;
    g.children.push_back(std::move(inner));
    return g;
}

namespace {

Guard nary(Guard::Kind kind, std::vector<Guard> parts) {
    std::vector<Guard> flat;
    for (auto& p : parts) {
        if (p.kind == kind) {
            for (auto& c : p.children) flat.push_back(std::move(c));
        } else {
            flat.push_back(std::move(p));
        }
    }
    if (flat.empty()) return kind == Guard::Kind::And ? Guard::truth() : Guard::falsity();
    if (flat.size() == 1) return std::move(flat.front());
    Guard g;
    g.kind = kind;
    g.children = std::move(flat);
    return g;
}

}  // namespace

Guard Guard::conjunction(std::vector<Guard> parts) { return nary(Kind::And, std::move(parts)); }
Guard Guard::disjunction(std::vector<Guard> parts) { return nary(Kind::Or, std::move(parts)); }

bool Guard::eval(const LabelSet& labels) const {
    switch (kind) {
        case Kind::True: return true;
        case Kind::False: return false;
        case Kind::Atom: return labels.count(atom) > 0;
        case Kind::Not: return !children.front().eval(labels);
        case Kind::And:
            return std::all_of(children.begin(), children.end(), [&](const Guard& c) { return c.eval(labels); });
        case Kind::Or:
            return std::any_of(children.begin(), children.end(), [&](const Guard& c) { return c.eval(labels); });
    }
    return false;
}

namespace {

Guard from_ltl(const LtlAst& a, std::size_t& bad_offset_hint) {
    switch (a.kind) {
        case LtlKind::True: return Guard::truth();
        case LtlKind::False: return Guard::falsity();
        case LtlKind::Atom: return Guard::atom_ref(a.atom);
        case LtlKind::Not: return Guard::negation(from_ltl(a.lhs(), bad_offset_hint));
        case LtlKind::And:
            return Guard::conjunction({from_ltl(a.lhs(), bad_offset_hint), from_ltl(a.rhs(), bad_offset_hint)});
        case LtlKind::Or:
            return Guard::disjunction({from_ltl(a.lhs(), bad_offset_hint), from_ltl(a.rhs(), bad_offset_hint)});
        default:
            throw SyntaxError(bad_offset_hint, {"atom", "true", "false", "!", "&", "|", "("},
                              "temporal or implication operator in guard");
    }
}

}  // namespace

Guard parse_guard(std::string_view text) {
    std::size_t hint = 0;
    return from_ltl(parse_ltl(text), hint);
}

namespace {

std::string guard_text(const Guard& g, int parent_prec) {
    // precedence: Or 1, And 2, Not/atoms 3
    switch (g.kind) {
        case Guard::Kind::True: return "true";
        case Guard::Kind::False: return "false";
        case Guard::Kind::Atom: return g.atom;
        case Guard::Kind::Not: return "!" + guard_text(g.children.front(), 3);
        case Guard::Kind::And:
        case Guard::Kind::Or: {
            int prec = g.kind == Guard::Kind::And ? 2 : 1;
            std::string sep = g.kind == Guard::Kind::And ? " & " : " | ";
            std::string out;
            for (std::size_t i = 0; i < g.children.size(); ++i) {
                if (i) out += sep;
                out += guard_text(g.children[i], prec);
            }
            return prec < parent_prec ? "(" + out + ")" : out;
        }
    }
    return {};
}

}  // namespace

std::string to_string(const Guard& g) { return guard_text(g, 0); }

void collect_atoms(const Guard& g, std::vector<std::string>& out) {
    if (g.kind == Guard::Kind::Atom && std::find(out.begin(), out.end(), g.atom) == out.end())
        out.push_back(g.atom);
    for (const auto& c : g.children) collect_atoms(c, out);
}

// ---------------------------------------------------------------------------
// Nba

bool Nba::is_accepting(std::uint32_t q) const {
    return std::find(accepting.begin(), accepting.end(), q) != accepting.end();
}

bool Nba::is_initial(std::uint32_t q) const {
    return std::find(initial.begin(), initial.end(), q) != initial.end();
}

std::vector<std::size_t> Nba::out_edges(std::uint32_t q) const {
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < edges.size(); ++e)
        if (edges[e].src == q) out.push_back(e);
    return out;
}

void validate(const Nba& nba) {
    const auto n = nba.num_states();
    if (nba.initial.empty()) throw FormatError(0, "automaton has no initial state");
    for (auto q : nba.initial)
        if (q >= n) throw FormatError(0, "initial state index out of range");
    for (auto q : nba.accepting)
        if (q >= n) throw FormatError(0, "accepting state index out of range");
    std::vector<std::string> atoms;
    for (const auto& e : nba.edges) {
        if (e.src >= n || e.dst >= n) throw FormatError(0, "edge endpoint out of range");
        atoms.clear();
        collect_atoms(e.guard, atoms);
        for (const auto& a : atoms)
            if (std::find(nba.alphabet.begin(), nba.alphabet.end(), a) == nba.alphabet.end())
                throw FormatError(0, "guard atom '" + a + "' not in alphabet");
    }
}

bool guard_sat(const Nba& nba, const Guard& guard, const LabelSet& labels) {
    std::vector<std::string> atoms;
    collect_atoms(guard, atoms);
    for (const auto& a : atoms)
        if (std::find(nba.alphabet.begin(), nba.alphabet.end(), a) == nba.alphabet.end()) throw UnknownAtom(a);
    return guard.eval(labels);
}

std::vector<std::uint32_t> nba_successors(const Nba& nba, std::uint32_t q, const LabelSet& labels) {
    std::vector<std::uint32_t> out;
    for (const auto& e : nba.edges)
        if (e.src == q && e.guard.eval(labels)) out.push_back(e.dst);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool nba_accepts_lasso(const Nba& nba, const LassoWord& word) {
    const std::size_t len = word.prefix.size() + word.cycle.size();
    if (word.cycle.empty() || nba.num_states() == 0) return false;
    const std::size_t nq = nba.num_states();
    auto id = [&](std::size_t pos, std::uint32_t q) { return static_cast<std::uint32_t>(pos * nq + q); };
    auto letter = [&](std::size_t pos) -> const LabelSet& {
        return pos < word.prefix.size() ? word.prefix[pos] : word.cycle[pos - word.prefix.size()];
    };

    // Successor sets per (position, state); every position reads its own letter.
    std::vector<std::vector<std::uint32_t>> adj(len * nq);
    for (std::size_t pos = 0; pos < len; ++pos) {
        std::size_t next = pos + 1 < len ? pos + 1 : word.prefix.size();
        for (const auto& e : nba.edges)
            if (e.guard.eval(letter(pos))) adj[id(pos, e.src)].push_back(id(next, e.dst));
    }
    std::vector<std::uint32_t> init;
    for (auto q : nba.initial) init.push_back(id(0, q));
    auto reach = detail::reachable_from(adj, init);

    std::uint32_t ncomp = 0;
    auto comp = detail::strongly_connected_components(adj, &ncomp);
    std::vector<std::uint32_t> comp_size(ncomp, 0);
    for (auto c : comp) ++comp_size[c];
    for (std::size_t pos = 0; pos < len; ++pos) {
        for (auto f : nba.accepting) {
            auto v = id(pos, f);
            if (!reach[v]) continue;
            if (comp_size[comp[v]] > 1) return true;
            if (std::find(adj[v].begin(), adj[v].end(), v) != adj[v].end()) return true;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::string_view trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct PendingEdge {
    std::size_t line;
    std::string src, dst, guard;
};

}  // namespace

Nba parse_nba(std::string_view text) {
    Nba nba;
    std::map<std::string, std::pair<std::size_t, std::vector<std::string>>> headers;
    std::vector<PendingEdge> pending;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        auto hash = raw.find('#');
        auto line = trim(raw.substr(0, hash));
        if (line.empty()) continue;

        auto arrow = line.find("-->");
        if (arrow != std::string_view::npos) {
            auto dash = line.find("--");
            if (dash == arrow) throw FormatError(line_no, "edge is missing the '--' before its guard");
            auto src = trim(line.substr(0, dash));
            auto guard = trim(line.substr(dash + 2, arrow - dash - 2));
            auto dst = trim(line.substr(arrow + 3));
            if (src.empty() || dst.empty() || split_ws(src).size() != 1 || split_ws(dst).size() != 1)
                throw FormatError(line_no, "edge must read 'src -- guard --> dst'");
            if (guard.empty()) throw FormatError(line_no, "edge guard is empty");
            pending.push_back({line_no, std::string(src), std::string(dst), std::string(guard)});
            continue;
        }
        auto colon = line.find(':');
        if (colon == std::string_view::npos) throw FormatError(line_no, "expected a header or an edge");
        std::string key(trim(line.substr(0, colon)));
        if (key != "states" && key != "initial" && key != "accepting" && key != "alphabet")
            throw FormatError(line_no, "unknown header '" + key + "'");
        if (headers.count(key)) throw FormatError(line_no, "duplicate header '" + key + "'");
        headers[key] = {line_no, split_ws(line.substr(colon + 1))};
    }

    if (!headers.count("states")) throw FormatError(0, "missing 'states:' header");
    if (!headers.count("initial")) throw FormatError(0, "missing 'initial:' header");

    std::unordered_map<std::string, std::uint32_t> index;
    for (const auto& name : headers["states"].second) {
        if (!index.emplace(name, static_cast<std::uint32_t>(nba.state_names.size())).second)
            throw FormatError(headers["states"].first, "duplicate state '" + name + "'");
        nba.state_names.push_back(name);
    }
    auto resolve = [&](const std::string& name, std::size_t line) {
        auto it = index.find(name);
        if (it == index.end()) throw FormatError(line, "unknown state '" + name + "'");
        return it->second;
    };
    for (const auto& name : headers["initial"].second) nba.initial.push_back(resolve(name, headers["initial"].first));
    if (nba.initial.empty()) throw FormatError(headers["initial"].first, "no initial state listed");
    if (headers.count("accepting"))
        for (const auto& name : headers["accepting"].second)
            nba.accepting.push_back(resolve(name, headers["accepting"].first));

    bool explicit_alphabet = headers.count("alphabet") > 0;
    if (explicit_alphabet) nba.alphabet = headers["alphabet"].second;

    for (const auto& pe : pending) {
        NbaEdge e;
        e.src = resolve(pe.src, pe.line);
        e.dst = resolve(pe.dst, pe.line);
        try {
            e.guard = parse_guard(pe.guard);
        } catch (const Error& err) {
            throw FormatError(pe.line, std::string("bad guard: ") + err.what());
        }
        std::vector<std::string> atoms;
        collect_atoms(e.guard, atoms);
        for (const auto& a : atoms) {
            if (std::find(nba.alphabet.begin(), nba.alphabet.end(), a) != nba.alphabet.end()) continue;
            if (explicit_alphabet) throw FormatError(pe.line, "guard atom '" + a + "' not in alphabet");
            nba.alphabet.push_back(a);
        }
        nba.edges.push_back(std::move(e));
    }
    validate(nba);
    return nba;
}

std::string emit_nba(const Nba& nba) {
    std::ostringstream out;
    auto list = [&](const char* key, const auto& items, auto&& name_of) {
        out << key << ':';
        for (const auto& it : items) out << ' ' << name_of(it);
        out << '\n';
    };
    auto state_name = [&](std::uint32_t q) -> const std::string& { return nba.state_names[q]; };
    auto ident = [](const std::string& s) -> const std::string& { return s; };
    list("states", nba.state_names, ident);
    list("initial", nba.initial, state_name);
    list("accepting", nba.accepting, state_name);
    list("alphabet", nba.alphabet, ident);
    for (const auto& e : nba.edges)
        out << nba.state_names[e.src] << " -- " << to_string(e.guard) << " --> " << nba.state_names[e.dst] << '\n';
    return out.str();
}

}  // namespace ltlplan
