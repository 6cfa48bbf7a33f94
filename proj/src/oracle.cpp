#include "ltlplan/oracle.hpp"

#include "ltlplan/errors.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <unordered_map>

namespace ltlplan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint32_t kNone = UINT32_MAX;

struct QueueItem {
    double dist;
    std::uint64_t seq;
    std::uint32_t v;
    bool operator>(const QueueItem& o) const { return dist != o.dist ? dist > o.dist : seq > o.seq; }
};
using MinQueue = std::priority_queue<QueueItem, std::vector<QueueItem>, std::greater<>>;

struct ShortestPaths {
    std::vector<double> dist;
    std::vector<std::uint32_t> parent;
    std::vector<std::uint32_t> order;  // settle order
};

ShortestPaths dijkstra(const ExplicitPba& g, std::uint32_t source) {
    ShortestPaths sp;
    sp.dist.assign(g.vertices.size(), kInf);
    sp.parent.assign(g.vertices.size(), kNone);
    std::vector<bool> done(g.vertices.size(), false);
    MinQueue pq;
    std::uint64_t seq = 0;
    sp.dist[source] = 0;
    pq.push({0, seq++, source});
    while (!pq.empty()) {
        auto [d, s, u] = pq.top();
        pq.pop();
        if (done[u]) continue;
        done[u] = true;
        sp.order.push_back(u);
        for (const auto& arc : g.adj[u]) {
            double nd = d + arc.weight;
            if (nd < sp.dist[arc.to]) {
                sp.dist[arc.to] = nd;
                sp.parent[arc.to] = u;
                pq.push({nd, seq++, arc.to});
            }
        }
    }
    return sp;
}

// Cheapest closed walk of length >= 1 through f, bounded by `bound`.
// Returns (cost, predecessor p of f on the walk, parents from f).
struct Cycle {
    double cost = kInf;
    std::uint32_t last = kNone;
    std::vector<std::uint32_t> parent;
};

Cycle shortest_cycle(const ExplicitPba& g, std::uint32_t f, double bound) {
    Cycle c;
    std::vector<double> dist(g.vertices.size(), kInf);
    c.parent.assign(g.vertices.size(), kNone);
    std::vector<bool> done(g.vertices.size(), false);
    MinQueue pq;
    std::uint64_t seq = 0;
    dist[f] = 0;
    pq.push({0, seq++, f});
    while (!pq.empty()) {
        auto [d, s, u] = pq.top();
        pq.pop();
        if (done[u]) continue;
        if (d >= c.cost || d >= bound) break;
        done[u] = true;
        for (const auto& arc : g.adj[u]) {
            double nd = d + arc.weight;
            if (arc.to == f) {
                if (nd < c.cost) {
                    c.cost = nd;
                    c.last = u;
                }
                continue;
            }
            if (nd < dist[arc.to]) {
                dist[arc.to] = nd;
                c.parent[arc.to] = u;
                pq.push({nd, seq++, arc.to});
            }
        }
    }
    return c;
}

std::vector<std::uint32_t> unwind(const std::vector<std::uint32_t>& parent, std::uint32_t from, std::uint32_t to) {
    std::vector<std::uint32_t> path;
    for (auto v = to; v != from; v = parent[v]) path.push_back(v);
    path.push_back(from);
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace

ExplicitPba build_explicit_pba(const MultiRobotModel& model, const Nba& nba, std::uint64_t max_states) {
    const std::uint64_t pts = pts_state_count(model);
    const std::uint64_t nb = nba.num_states();
    std::uint64_t count = nb != 0 && pts > std::numeric_limits<std::uint64_t>::max() / nb
                              ? std::numeric_limits<std::uint64_t>::max()
                              : pts * nb;
    if (count > max_states || count >= kNone) throw CapacityExceeded(count, max_states, "explicit product automaton");

    ProductSpace space(model, nba);
    ExplicitPba g;
    g.num_buchi = static_cast<std::uint32_t>(nb);
    g.vertices.resize(count);
    g.adj.resize(count);
    const std::size_t words = space.words();
    std::vector<std::uint64_t> step;
    const std::size_t n = model.robots.size();
    for (std::uint64_t key = 0; key < pts; ++key) {
        PtsState p = space.decode(key);
        for (std::uint32_t b = 0; b < nb; ++b) g.vertices[key * nb + b] = {p, b};
        space.step_table(p, step);

        std::vector<const std::vector<std::uint32_t>*> lists(n);
        bool terminal = false;
        for (std::size_t i = 0; i < n; ++i) {
            lists[i] = &space.succ(i, p[i]);
            if (lists[i]->empty()) terminal = true;
        }
        if (terminal) continue;
        std::vector<std::size_t> digit(n, 0);
        PtsState q(n);
        while (true) {
            for (std::size_t i = 0; i < n; ++i) q[i] = (*lists[i])[digit[i]];
            const double w = space.pts_cost(p, q);
            const std::uint64_t qkey = space.encode(q);
            for (std::uint32_t b = 0; b < nb; ++b) {
                for (std::uint32_t b2 = 0; b2 < nb; ++b2) {
                    if (!((step[b * words + b2 / 64] >> (b2 % 64)) & 1u)) continue;
                    g.adj[key * nb + b].push_back({static_cast<std::uint32_t>(qkey * nb + b2), w});
                    ++g.num_edges;
                }
            }
            std::size_t i = n;
            bool more = false;
            while (i > 0) {
                --i;
                if (++digit[i] < lists[i]->size()) {
                    more = true;
                    break;
                }
                digit[i] = 0;
            }
            if (!more) break;
        }
    }
    const std::uint64_t init_key = space.encode(initial_state(model));
    for (auto b : nba.initial) g.initial.push_back(static_cast<std::uint32_t>(init_key * nb + b));
    for (std::uint64_t v = 0; v < count; ++v)
        if (nba.is_accepting(static_cast<std::uint32_t>(v % nb))) g.accepting.push_back(static_cast<std::uint32_t>(v));
    return g;
}

OracleResult oracle_optimal_plan(const MultiRobotModel& model, const Nba& nba, std::uint64_t max_states) {
    auto g = build_explicit_pba(model, nba, max_states);
    OracleResult res;
    res.vertices = g.vertices.size();
    res.edges = g.num_edges;

    std::vector<bool> is_acc(g.vertices.size(), false);
    for (auto f : g.accepting) is_acc[f] = true;

    struct Best {
        double cost;
        std::uint32_t k;
        std::vector<std::uint32_t> prefix, cycle;
    };
    std::optional<Best> best;

    for (std::uint32_t k = 0; k < g.initial.size(); ++k) {
        const auto src = g.initial[k];
        auto sp = dijkstra(g, src);
        for (auto f : sp.order) {
            if (!is_acc[f]) continue;
            double d = sp.dist[f];
            double bound = best ? best->cost - d : kInf;
            if (best && d >= best->cost) break;
            auto cyc = shortest_cycle(g, f, bound);
            if (cyc.last == kNone) continue;
            double j = d + cyc.cost;
            if (!best || j < best->cost) {
                auto walk = cyc.last == f ? std::vector<std::uint32_t>{f} : unwind(cyc.parent, f, cyc.last);
                walk.push_back(f);
                best = Best{j, k, unwind(sp.parent, src, f), std::move(walk)};
            }
        }
    }
    if (!best) return res;

    std::vector<ProductState> pre, suf;
    for (auto v : best->prefix) pre.push_back(g.vertices[v]);
    for (auto v : best->cycle) suf.push_back(g.vertices[v]);
    bool trivial = suf.size() == 2 && pts_weight(model, suf[0].pts, suf[1].pts) == 0.0;
    res.plan = assemble_plan(model, std::move(pre), std::move(suf), best->k, trivial);
    auto check = validate_plan(model, nba, *res.plan);
    if (!check.ok) throw std::logic_error("oracle plan failed validation: " + check.reason);
    return res;
}

std::optional<double> oracle_prefix_cost(const MultiRobotModel& model, const Nba& nba, std::uint64_t max_states) {
    auto g = build_explicit_pba(model, nba, max_states);
    std::optional<double> best;
    for (auto src : g.initial) {
        auto sp = dijkstra(g, src);
        for (auto f : g.accepting)
            if (sp.dist[f] < kInf && (!best || sp.dist[f] < *best)) best = sp.dist[f];
    }
    return best;
}

UcsResult ucs_optimal_prefix(const MultiRobotModel& model, const Nba& nba, std::uint64_t max_expansions) {
    validate(nba);
    UcsResult res;
    std::vector<ProductState> states;
    std::unordered_map<ProductState, std::uint32_t, ProductStateHash> index;
    std::vector<double> dist;
    std::vector<bool> done;
    MinQueue pq;
    std::uint64_t seq = 0;

    auto touch = [&](const ProductState& q, double d) {
        auto [it, fresh] = index.emplace(q, static_cast<std::uint32_t>(states.size()));
        if (fresh) {
            states.push_back(q);
            dist.push_back(kInf);
            done.push_back(false);
        }
        auto v = it->second;
        if (d < dist[v]) {
            dist[v] = d;
            pq.push({d, seq++, v});
        }
    };
    const PtsState q0 = initial_state(model);
    for (auto b : nba.initial) touch({q0, b}, 0.0);

    while (!pq.empty()) {
        auto [d, s, u] = pq.top();
        pq.pop();
        if (done[u]) continue;
        done[u] = true;
        if (nba.is_accepting(states[u].buchi)) {
            res.accepting = states[u];
            res.cost = d;
            return res;
        }
        if (res.expansions >= max_expansions) throw BudgetExceeded(res.expansions);
        ++res.expansions;
        const ProductState from = states[u];
        SuccessorCursor cur(model, nba, from);
        while (auto q = cur.next()) touch(*q, d + pts_weight(model, from.pts, q->pts));
    }
    return res;
}

}  // namespace ltlplan
