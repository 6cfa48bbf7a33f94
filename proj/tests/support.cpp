#include "support.hpp"

#include <algorithm>
#include <functional>
#include <limits>

namespace support {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<LabelSet> letters(const std::vector<std::string>& atoms) {
    std::vector<LabelSet> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << atoms.size()); ++mask) {
        LabelSet s;
        for (std::size_t i = 0; i < atoms.size(); ++i)
            if (mask >> i & 1) s.insert(atoms[i]);
        out.push_back(std::move(s));
    }
    return out;
}

void words_of_length(const std::vector<LabelSet>& alpha, std::size_t len, std::vector<std::vector<LabelSet>>& out) {
    std::vector<std::size_t> digit(len, 0);
    while (true) {
        std::vector<LabelSet> w;
        for (auto d : digit) w.push_back(alpha[d]);
        out.push_back(std::move(w));
        std::size_t i = 0;
        while (i < len && ++digit[i] == alpha.size()) digit[i++] = 0;
        if (i == len) break;
    }
}

// dist[v] after relaxing walks of up to |V| edges from `sources`.
std::vector<double> relax(const BruteGraph& g, const std::vector<std::uint32_t>& sources, bool at_least_one_edge) {
    const std::size_t n = g.vertices.size();
    std::vector<double> cur(n, kInf), best(n, kInf);
    for (auto s : sources) cur[s] = 0;
    if (!at_least_one_edge) best = cur;
    for (std::size_t len = 1; len <= n; ++len) {
        std::vector<double> next(n, kInf);
        for (std::size_t u = 0; u < n; ++u) {
            if (cur[u] == kInf) continue;
            for (auto [v, w] : g.adj[u]) next[v] = std::min(next[v], cur[u] + w);
        }
        for (std::size_t v = 0; v < n; ++v) best[v] = std::min(best[v], next[v]);
        cur = std::move(next);
    }
    return best;
}

}  // namespace

std::vector<LassoWord> all_lassos(const std::vector<std::string>& atoms, std::size_t max_prefix,
                                  std::size_t max_cycle) {
    auto alpha = letters(atoms);
    std::vector<std::vector<LabelSet>> prefixes, cycles;
    prefixes.push_back({});
    for (std::size_t len = 1; len <= max_prefix; ++len) words_of_length(alpha, len, prefixes);
    for (std::size_t len = 1; len <= max_cycle; ++len) words_of_length(alpha, len, cycles);
    std::vector<LassoWord> out;
    out.reserve(prefixes.size() * cycles.size());
    for (const auto& p : prefixes)
        for (const auto& c : cycles) out.push_back({p, c});
    return out;
}

std::vector<std::string> translator_corpus() {
    return {
        "<> a",
        "[] a",
        "[] <> a",
        "<> [] a",
        "a U b",
        "X a",
        "a R b",
        "a U (b U c)",
        "(a U b) U c",
        "a R (b U c)",
        "!(a U b) & [] <> c",
        "X (a U X b)",
        "[] (a -> X b)",
        "[] (a -> <> b)",
        "[] <> a -> [] <> b",
        "<> [] a | [] <> b",
        // intermittent meeting shape
        "[] <> (a & b) & [] <> (b & c) & (!(a & b) U c)",
        // visit-and-avoid shape with a response clause
        "[] <> (a & <> b) & [] !c & [] (b -> X (!b U a)) & <> (b & !a)",
        "true",
        "<> a & [] !a",
    };
}

std::vector<CorpusCase> acceptance_corpus(std::size_t count) {
    std::vector<CorpusCase> out;
    for (std::uint64_t seed = 0; out.size() < count; ++seed) {
        RandomSpec spec;
        spec.seed = seed;
        spec.robots = 1 + static_cast<int>(seed % 3);
        spec.min_states = 2;
        spec.max_states = 6;
        spec.zero_self_loops = seed % 2 == 0;
        CorpusCase c;
        c.seed = seed;
        c.inst = random_instance(spec);
        c.nba = ltl_to_nba(parse_ltl(c.inst.formula));
        if (c.nba.num_states() > 12) continue;
        auto o = oracle_optimal_plan(c.inst.model, c.nba, 10'000);
        if (!o.plan) continue;
        c.j_star = o.plan->total_cost;
        c.product_states = o.vertices;
        out.push_back(std::move(c));
    }
    return out;
}

BruteGraph brute_graph(const MultiRobotModel& model, const Nba& nba) {
    BruteGraph g;
    std::vector<PtsState> pts{{}};
    for (const auto& r : model.robots) {
        std::vector<PtsState> grown;
        for (const auto& p : pts)
            for (std::uint32_t s = 0; s < r.num_states(); ++s) {
                auto q = p;
                q.push_back(s);
                grown.push_back(std::move(q));
            }
        pts = std::move(grown);
    }
    for (const auto& p : pts)
        for (std::uint32_t b = 0; b < nba.num_states(); ++b) g.vertices.push_back({p, b});
    g.adj.resize(g.vertices.size());
    const PtsState q0 = initial_state(model);
    for (std::uint32_t u = 0; u < g.vertices.size(); ++u) {
        const auto& from = g.vertices[u];
        if (from.pts == q0 && nba.is_initial(from.buchi)) g.initial.push_back(u);
        if (nba.is_accepting(from.buchi)) g.accepting.push_back(u);
        auto next_b = nba_successors(nba, from.buchi, pts_label(model, from.pts));
        for (std::uint32_t v = 0; v < g.vertices.size(); ++v) {
            const auto& to = g.vertices[v];
            if (!pts_transition(model, from.pts, to.pts)) continue;
            if (!std::binary_search(next_b.begin(), next_b.end(), to.buchi)) continue;
            double w = 0;
            for (std::size_t i = 0; i < model.robots.size(); ++i)
                w += model.robots[i].weight(from.pts[i], to.pts[i]);
            g.adj[u].push_back({v, w});
        }
    }
    return g;
}

std::optional<double> walk_dp_prefix(const BruteGraph& g) {
    auto d = relax(g, g.initial, false);
    double best = kInf;
    for (auto f : g.accepting) best = std::min(best, d[f]);
    if (best == kInf) return std::nullopt;
    return best;
}

std::optional<double> walk_dp_optimum(const BruteGraph& g) {
    auto pre = relax(g, g.initial, false);
    double best = kInf;
    for (auto f : g.accepting) {
        if (pre[f] == kInf) continue;
        auto cyc = relax(g, {f}, true);
        if (cyc[f] < kInf) best = std::min(best, pre[f] + cyc[f]);
    }
    if (best == kInf) return std::nullopt;
    return best;
}

std::optional<double> simple_path_optimum(const BruteGraph& g) {
    const std::size_t n = g.vertices.size();
    std::vector<bool> on(n, false);
    // cheapest simple path from s to each vertex
    std::vector<double> pre(n, kInf);
    std::function<void(std::uint32_t, double)> paths = [&](std::uint32_t u, double c) {
        pre[u] = std::min(pre[u], c);
        on[u] = true;
        for (auto [v, w] : g.adj[u])
            if (!on[v]) paths(v, c + w);
        on[u] = false;
    };
    for (auto s : g.initial) paths(s, 0);

    double best = kInf;
    for (auto f : g.accepting) {
        if (pre[f] == kInf) continue;
        double cyc = kInf;
        std::function<void(std::uint32_t, double)> cycles = [&](std::uint32_t u, double c) {
            on[u] = true;
            for (auto [v, w] : g.adj[u]) {
                if (v == f)
                    cyc = std::min(cyc, c + w);
                else if (!on[v])
                    cycles(v, c + w);
            }
            on[u] = false;
        };
        cycles(f, 0);
        if (cyc < kInf) best = std::min(best, pre[f] + cyc);
    }
    if (best == kInf) return std::nullopt;
    return best;
}

MultiRobotModel two_by_two() {
    return load_model(R"({"robots":[
        {"id":1,"states":["l1","l2"],"initial":"l1","edges":[["l1","l1",0],["l1","l2",1.5],["l2","l1",1.5],["l2","l2",0]]},
        {"id":2,"states":["l1","l2"],"initial":"l2","edges":[["l1","l1",0],["l1","l2",2.0],["l2","l1",2.0],["l2","l2",0]]}
    ]})");
}

Nba nba_of(const std::string& formula) { return ltl_to_nba(parse_ltl(formula)); }

}  // namespace support
