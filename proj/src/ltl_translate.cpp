#include "ltlplan/ltl_translate.hpp"

#include "ltlplan/detail/scc.hpp"
#include "ltlplan/errors.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <tuple>

namespace ltlplan {

namespace {

// Literal code: 2 * atom index, +1 when negated.
using Cube = std::vector<int>;
using Dnf = std::vector<Cube>;

struct Node {
    LtlKind kind;
    int a = -1;
    int b = -1;
    int atom = -1;
};

class FormulaTable {
public:
    explicit FormulaTable(std::vector<std::string> alphabet) : alphabet_(std::move(alphabet)) {}

    int build(const LtlAst& f) {
        switch (f.kind) {
            case LtlKind::True:
            case LtlKind::False: return intern({f.kind});
            case LtlKind::Atom: return intern({f.kind, -1, -1, atom_index(f.atom)});
            case LtlKind::Not: {
                // input is NNF, so the operand is an atom
                return intern({f.kind, build(f.lhs())});
            }
            case LtlKind::Next: return intern({f.kind, build(f.lhs())});
            case LtlKind::And:
            case LtlKind::Or:
            case LtlKind::Until:
            case LtlKind::Release: {
                int a = build(f.lhs());
                int b = build(f.rhs());
                return intern({f.kind, a, b});
            }
            default: throw std::logic_error("formula table expects negation normal form");
        }
    }

    const Node& operator[](int id) const { return nodes_[static_cast<std::size_t>(id)]; }
    std::size_t size() const { return nodes_.size(); }
    const std::vector<std::string>& alphabet() const { return alphabet_; }

    LtlAst ast(int id) const {
        const Node& n = (*this)[id];
        switch (n.kind) {
            case LtlKind::True: return ltl::truth();
            case LtlKind::False: return ltl::falsity();
            case LtlKind::Atom: return ltl::atom(alphabet_[static_cast<std::size_t>(n.atom)]);
            case LtlKind::Not: return ltl::neg(ast(n.a));
            case LtlKind::Next: return ltl::next(ast(n.a));
            case LtlKind::And: return ltl::conj(ast(n.a), ast(n.b));
            case LtlKind::Or: return ltl::disj(ast(n.a), ast(n.b));
            case LtlKind::Until: return ltl::until(ast(n.a), ast(n.b));
            case LtlKind::Release: return ltl::release(ast(n.a), ast(n.b));
            default: return ltl::truth();
        }
    }

    // Sound, incomplete syntactic implication f => e.
    bool implies(int f, int e) const {
        if (f == e) return true;
        const Node& nf = (*this)[f];
        const Node& ne = (*this)[e];
        if (ne.kind == LtlKind::True || nf.kind == LtlKind::False) return true;
        if (ne.kind == LtlKind::And) return implies(f, ne.a) && implies(f, ne.b);
        if (ne.kind == LtlKind::Or && (implies(f, ne.a) || implies(f, ne.b))) return true;
        if (nf.kind == LtlKind::Or) return implies(nf.a, e) && implies(nf.b, e);
        if (nf.kind == LtlKind::And && (implies(nf.a, e) || implies(nf.b, e))) return true;
        if (ne.kind == LtlKind::Until && implies(f, ne.b)) return true;
        if (nf.kind == LtlKind::Release && implies(nf.b, e)) return true;
        if (ne.kind == LtlKind::Release && implies(f, ne.a) && implies(f, ne.b)) return true;
        if (nf.kind == LtlKind::Until && implies(nf.a, e) && implies(nf.b, e)) return true;
        if (nf.kind == ne.kind &&
            (nf.kind == LtlKind::Until || nf.kind == LtlKind::Release)) {
            return implies(nf.a, ne.a) && implies(nf.b, ne.b);
        }
        if (nf.kind == LtlKind::Next && ne.kind == LtlKind::Next) return implies(nf.a, ne.a);
        return false;
    }

private:
    int atom_index(const std::string& name) const {
        auto it = std::find(alphabet_.begin(), alphabet_.end(), name);
        return static_cast<int>(it - alphabet_.begin());
    }

    int intern(Node n) {
        auto key = std::make_tuple(static_cast<int>(n.kind), n.a, n.b, n.atom);
        auto it = index_.find(key);
        if (it != index_.end()) return it->second;
        int id = static_cast<int>(nodes_.size());
        nodes_.push_back(n);
        index_.emplace(key, id);
        return id;
    }

    std::vector<std::string> alphabet_;
    std::vector<Node> nodes_;
    std::map<std::tuple<int, int, int, int>, int> index_;
};

struct Cover {
    std::set<int> lits;
    std::set<int> next;
    std::set<int> deferred;
    std::set<int> done;
};

class Expander {
public:
    explicit Expander(const FormulaTable& t) : t_(t) {}

    std::vector<Cover> covers(const std::vector<int>& state) {
        std::vector<Cover> out;
        std::vector<int> todo(state.rbegin(), state.rend());
        run(std::move(todo), Cover{}, out);
        return out;
    }

private:
    void run(std::vector<int> todo, Cover c, std::vector<Cover>& out) {
        while (!todo.empty()) {
            int f = todo.back();
            todo.pop_back();
            if (!c.done.insert(f).second) continue;
            const Node& n = t_[f];
            switch (n.kind) {
                case LtlKind::True: break;
                case LtlKind::False: return;
                case LtlKind::Atom:
                case LtlKind::Not: {
                    int lit = n.kind == LtlKind::Atom ? 2 * n.atom : 2 * t_[n.a].atom + 1;
                    if (c.lits.count(lit ^ 1)) return;
                    c.lits.insert(lit);
                    break;
                }
                case LtlKind::And:
                    todo.push_back(n.b);
                    todo.push_back(n.a);
                    break;
                case LtlKind::Or: {
                    auto left = todo;
                    left.push_back(n.a);
                    run(std::move(left), c, out);
                    todo.push_back(n.b);
                    break;
                }
                case LtlKind::Next: c.next.insert(n.a); break;
                case LtlKind::Until: {
                    auto now = todo;
                    now.push_back(n.b);
                    run(std::move(now), c, out);
                    todo.push_back(n.a);
                    c.next.insert(f);
                    c.deferred.insert(f);
                    break;
                }
                case LtlKind::Release: {
                    auto both = todo;
                    both.push_back(n.b);
                    both.push_back(n.a);
                    run(std::move(both), c, out);
                    todo.push_back(n.b);
                    c.next.insert(f);
                    break;
                }
                default: break;
            }
        }
        out.push_back(std::move(c));
    }

    const FormulaTable& t_;
};

// Flattens conjunctions, drops `true` and formulas implied by another member.
// Returns nothing when the set contains `false`.
std::optional<std::vector<int>> normalize(const FormulaTable& t, const std::set<int>& fs) {
    std::set<int> flat;
    std::vector<int> work(fs.begin(), fs.end());
    while (!work.empty()) {
        int f = work.back();
        work.pop_back();
        const Node& n = t[f];
        if (n.kind == LtlKind::True) continue;
        if (n.kind == LtlKind::False) return std::nullopt;
        if (n.kind == LtlKind::And) {
            work.push_back(n.a);
            work.push_back(n.b);
            continue;
        }
        flat.insert(f);
    }
    std::vector<int> members(flat.begin(), flat.end());
    std::vector<bool> removed(members.size(), false);
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = 0; j < members.size(); ++j) {
            if (i == j || removed[j]) continue;
            if (t.implies(members[j], members[i])) {
                removed[i] = true;
                break;
            }
        }
    }
    std::vector<int> out;
    for (std::size_t i = 0; i < members.size(); ++i)
        if (!removed[i]) out.push_back(members[i]);
    return out;
}

bool subset(const Cube& small, const Cube& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

void add_cube(Dnf& dnf, const Cube& cube) {
    for (const auto& c : dnf)
        if (subset(c, cube)) return;
    dnf.erase(std::remove_if(dnf.begin(), dnf.end(), [&](const Cube& c) { return subset(cube, c); }), dnf.end());
    dnf.push_back(cube);
}

Guard guard_of(const Dnf& dnf, const std::vector<std::string>& alphabet) {
    std::vector<Guard> terms;
    for (const auto& cube : dnf) {
        std::vector<Guard> lits;
        for (int lit : cube) {
            Guard a = Guard::atom_ref(alphabet[static_cast<std::size_t>(lit / 2)]);
            lits.push_back(lit % 2 ? Guard::negation(std::move(a)) : std::move(a));
        }
        terms.push_back(Guard::conjunction(std::move(lits)));
    }
    return Guard::disjunction(std::move(terms));
}

int literal_of(const Guard& g, const std::vector<std::string>& alphabet) {
    const Guard& atom = g.kind == Guard::Kind::Not ? g.children.front() : g;
    if (atom.kind != Guard::Kind::Atom) throw std::logic_error("guard is not in disjunctive normal form");
    auto it = std::find(alphabet.begin(), alphabet.end(), atom.atom);
    if (it == alphabet.end()) throw UnknownAtom(atom.atom);
    return 2 * static_cast<int>(it - alphabet.begin()) + (g.kind == Guard::Kind::Not ? 1 : 0);
}

Cube cube_of(const Guard& g, const std::vector<std::string>& alphabet) {
    Cube out;
    if (g.kind == Guard::Kind::True) return out;
    if (g.kind == Guard::Kind::And) {
        for (const auto& c : g.children) out.push_back(literal_of(c, alphabet));
    } else {
        out.push_back(literal_of(g, alphabet));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Dnf dnf_of(const Guard& g, const std::vector<std::string>& alphabet) {
    Dnf out;
    if (g.kind == Guard::Kind::False) return out;
    if (g.kind == Guard::Kind::Or) {
        for (const auto& c : g.children) add_cube(out, cube_of(c, alphabet));
    } else {
        add_cube(out, cube_of(g, alphabet));
    }
    return out;
}

std::string state_text(const FormulaTable& t, const std::vector<int>& state) {
    std::string out = "{";
    for (std::size_t i = 0; i < state.size(); ++i) {
        if (i) out += ", ";
        out += to_string(t.ast(state[i]));
    }
    return out + "}";
}

}  // namespace

Tgba ltl_to_tgba(const LtlAst& ast, const TranslateOptions& opts) {
    LtlAst nnf = to_nnf(ast);
    FormulaTable table(atoms_of(nnf));
    int root = table.build(nnf);

    std::vector<int> untils;
    for (std::size_t id = 0; id < table.size(); ++id)
        if (table[static_cast<int>(id)].kind == LtlKind::Until) untils.push_back(static_cast<int>(id));

    Tgba tgba;
    tgba.alphabet = table.alphabet();
    tgba.num_sets = static_cast<std::uint32_t>(untils.size());

    std::map<std::vector<int>, std::uint32_t> ids;
    std::vector<std::vector<int>> states;
    auto lookup = [&](const std::vector<int>& s) {
        auto [it, fresh] = ids.emplace(s, static_cast<std::uint32_t>(states.size()));
        if (fresh) {
            states.push_back(s);
            if (states.size() > opts.max_states) throw CapacityExceeded(states.size(), opts.max_states, "automaton");
        }
        return it->second;
    };

    auto init = normalize(table, {root});
    // An unsatisfiable start still needs a state; it simply has no edges.
    lookup(init ? *init : std::vector<int>{root});
    bool dead_start = !init;

    Expander expander(table);
    for (std::size_t s = 0; s < states.size(); ++s) {
        if (s == 0 && dead_start) break;
        struct Candidate {
            Cube lits;
            std::uint32_t dst;
            std::vector<std::uint32_t> marks;
        };
        std::vector<Candidate> cands;
        for (const auto& c : expander.covers(states[s])) {
            auto next = normalize(table, c.next);
            if (!next) continue;
            Candidate cand;
            cand.lits.assign(c.lits.begin(), c.lits.end());
            cand.dst = lookup(*next);
            for (std::size_t k = 0; k < untils.size(); ++k)
                if (!c.deferred.count(untils[k])) cand.marks.push_back(static_cast<std::uint32_t>(k));
            cands.push_back(std::move(cand));
        }

        std::vector<bool> dropped(cands.size(), false);
        for (std::size_t i = 0; i < cands.size(); ++i) {
            for (std::size_t j = 0; j < cands.size() && !dropped[i]; ++j) {
                if (i == j || dropped[j] || cands[i].dst != cands[j].dst) continue;
                bool covers = subset(cands[j].lits, cands[i].lits) &&
                              std::includes(cands[j].marks.begin(), cands[j].marks.end(), cands[i].marks.begin(),
                                            cands[i].marks.end());
                bool equal = cands[i].lits == cands[j].lits && cands[i].marks == cands[j].marks;
                if (covers && (!equal || j < i)) dropped[i] = true;
            }
        }

        std::vector<std::pair<std::pair<std::uint32_t, std::vector<std::uint32_t>>, Dnf>> grouped;
        for (std::size_t i = 0; i < cands.size(); ++i) {
            if (dropped[i]) continue;
            auto key = std::make_pair(cands[i].dst, cands[i].marks);
            auto it = std::find_if(grouped.begin(), grouped.end(), [&](const auto& g) { return g.first == key; });
            if (it == grouped.end()) {
                grouped.push_back({key, {}});
                it = std::prev(grouped.end());
            }
            add_cube(it->second, cands[i].lits);
        }
        for (auto& [key, dnf] : grouped) {
            Tgba::Edge e;
            e.src = static_cast<std::uint32_t>(s);
            e.dst = key.first;
            e.marks = key.second;
            e.guard = guard_of(dnf, tgba.alphabet);
            tgba.edges.push_back(std::move(e));
        }
    }

    for (const auto& s : states) tgba.state_names.push_back(state_text(table, s));
    return tgba;
}

bool tgba_accepts_lasso(const Tgba& tgba, const LassoWord& word) {
    const std::size_t len = word.prefix.size() + word.cycle.size();
    if (word.cycle.empty()) return false;
    const std::size_t nq = tgba.num_states();
    auto id = [&](std::size_t pos, std::uint32_t q) { return static_cast<std::uint32_t>(pos * nq + q); };

    struct ProductEdge {
        std::uint32_t src, dst;
        const std::vector<std::uint32_t>* marks;
    };
    std::vector<ProductEdge> pedges;
    std::vector<std::vector<std::uint32_t>> adj(len * nq);
    for (std::size_t pos = 0; pos < len; ++pos) {
        const LabelSet& letter = pos < word.prefix.size() ? word.prefix[pos] : word.cycle[pos - word.prefix.size()];
        std::size_t next = pos + 1 < len ? pos + 1 : word.prefix.size();
        for (const auto& e : tgba.edges) {
            if (!e.guard.eval(letter)) continue;
            adj[id(pos, e.src)].push_back(id(next, e.dst));
            pedges.push_back({id(pos, e.src), id(next, e.dst), &e.marks});
        }
    }
    auto reach = detail::reachable_from(adj, {id(0, tgba.initial)});
    std::uint32_t ncomp = 0;
    auto comp = detail::strongly_connected_components(adj, &ncomp);
    std::vector<std::vector<bool>> seen(ncomp);
    std::vector<bool> cyclic(ncomp, false);
    for (const auto& pe : pedges) {
        if (!reach[pe.src] || comp[pe.src] != comp[pe.dst]) continue;
        auto c = comp[pe.src];
        cyclic[c] = true;
        if (seen[c].empty()) seen[c].assign(tgba.num_sets, false);
        for (auto m : *pe.marks) seen[c][m] = true;
    }
    for (std::uint32_t c = 0; c < ncomp; ++c)
        if (cyclic[c] && std::all_of(seen[c].begin(), seen[c].end(), [](bool b) { return b; })) return true;
    return false;
}

Nba degeneralize(const Tgba& tgba, const TranslateOptions& opts) {
    const std::size_t n = tgba.num_states();
    std::vector<std::vector<std::uint32_t>> adj(n);
    std::vector<std::vector<std::size_t>> out(n);
    for (std::size_t e = 0; e < tgba.edges.size(); ++e) {
        adj[tgba.edges[e].src].push_back(tgba.edges[e].dst);
        out[tgba.edges[e].src].push_back(e);
    }
    std::uint32_t ncomp = 0;
    auto comp = detail::strongly_connected_components(adj, &ncomp);

    // Per SCC: the sets some internal edge misses, and whether every set is hit.
    std::vector<bool> cyclic(ncomp, false);
    std::vector<std::vector<int>> hit(ncomp, std::vector<int>(tgba.num_sets, 0));
    std::vector<std::size_t> internal(ncomp, 0);
    for (const auto& e : tgba.edges) {
        if (comp[e.src] != comp[e.dst]) continue;
        auto c = comp[e.src];
        cyclic[c] = true;
        ++internal[c];
        for (auto m : e.marks) ++hit[c][m];
    }
    std::vector<bool> accepting(ncomp, false);
    std::vector<std::vector<std::uint32_t>> relevant(ncomp);
    for (std::uint32_t c = 0; c < ncomp; ++c) {
        if (!cyclic[c]) continue;
        bool all = true;
        for (std::uint32_t s = 0; s < tgba.num_sets; ++s) {
            if (hit[c][s] == 0) all = false;
            if (static_cast<std::size_t>(hit[c][s]) < internal[c]) relevant[c].push_back(s);
        }
        accepting[c] = all;
    }

    using Key = std::pair<std::uint32_t, std::uint32_t>;  // (tgba state, level)
    std::map<Key, std::uint32_t> ids;
    std::vector<Key> states;
    auto lookup = [&](Key k) {
        auto [it, fresh] = ids.emplace(k, static_cast<std::uint32_t>(states.size()));
        if (fresh) {
            states.push_back(k);
            if (states.size() > opts.max_states) throw CapacityExceeded(states.size(), opts.max_states, "automaton");
        }
        return it->second;
    };
    auto is_acc = [&](Key k) {
        auto c = comp[k.first];
        return accepting[c] && k.second == relevant[c].size();
    };

    struct RawEdge {
        std::uint32_t src, dst;
        Dnf dnf;
    };
    std::vector<RawEdge> raw;
    lookup({tgba.initial, 0});
    for (std::size_t s = 0; s < states.size(); ++s) {
        auto [t, level] = states[s];
        std::size_t first = raw.size();
        for (auto ei : out[t]) {
            const auto& e = tgba.edges[ei];
            std::uint32_t j = 0;
            auto c = comp[e.dst];
            if (comp[e.src] == c && accepting[c]) {
                const auto& rel = relevant[c];
                std::uint32_t k = static_cast<std::uint32_t>(rel.size());
                j = level == k ? 0 : level;
                while (j < k && std::binary_search(e.marks.begin(), e.marks.end(), rel[j])) ++j;
            }
            std::uint32_t dst = lookup({e.dst, j});
            auto it = std::find_if(raw.begin() + static_cast<std::ptrdiff_t>(first), raw.end(),
                                   [&](const RawEdge& r) { return r.dst == dst; });
            if (it == raw.end()) {
                raw.push_back({static_cast<std::uint32_t>(s), dst, {}});
                it = std::prev(raw.end());
            }
            for (const auto& cube : dnf_of(e.guard, tgba.alphabet)) add_cube(it->dnf, cube);
        }
    }

    // Keep states that reach an accepting cycle, plus the initial state.
    const std::size_t m = states.size();
    std::vector<std::vector<std::uint32_t>> nadj(m), radj(m);
    for (const auto& r : raw) {
        nadj[r.src].push_back(r.dst);
        radj[r.dst].push_back(r.src);
    }
    std::uint32_t mcomp = 0;
    auto ncomp_of = detail::strongly_connected_components(nadj, &mcomp);
    std::vector<std::size_t> comp_size(mcomp, 0);
    for (auto c : ncomp_of) ++comp_size[c];
    std::vector<std::uint32_t> seeds;
    for (std::uint32_t v = 0; v < m; ++v) {
        if (!is_acc(states[v])) continue;
        bool loop = std::find(nadj[v].begin(), nadj[v].end(), v) != nadj[v].end();
        if (loop || comp_size[ncomp_of[v]] > 1) seeds.push_back(v);
    }
    auto live = detail::reachable_from(radj, seeds);
    live[0] = true;

    std::vector<std::uint32_t> remap(m, UINT32_MAX);
    Nba nba;
    nba.alphabet = tgba.alphabet;
    for (std::uint32_t v = 0; v < m; ++v) {
        if (!live[v]) continue;
        remap[v] = static_cast<std::uint32_t>(nba.state_names.size());
        nba.state_names.push_back("q" + std::to_string(remap[v]));
        if (is_acc(states[v])) nba.accepting.push_back(remap[v]);
    }
    nba.initial.push_back(0);
    for (const auto& r : raw) {
        if (remap[r.src] == UINT32_MAX || remap[r.dst] == UINT32_MAX) continue;
        nba.edges.push_back({remap[r.src], guard_of(r.dnf, nba.alphabet), remap[r.dst]});
    }
    if (seeds.empty()) nba.edges.clear();
    return nba;
}

Nba ltl_to_nba(const LtlAst& ast, const TranslateOptions& opts) {
    return degeneralize(ltl_to_tgba(ast, opts), opts);
}

}  // namespace ltlplan
