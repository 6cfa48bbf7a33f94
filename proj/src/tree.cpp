#include "ltlplan/tree.hpp"

#include "ltlplan/errors.hpp"

#include <algorithm>
#include <chrono>

namespace ltlplan {

namespace {

constexpr std::uint64_t kDenseLimit = 1u << 20;
constexpr std::uint64_t kBucketLimit = 1u << 14;

}  // namespace

PlannerTree::PlannerTree(const ProductSpace& space, const ProductState& root, GoalKind goal)
    : space_(&space), goal_(goal), root_pts_(root.pts), root_buchi_(root.buchi) {
    if (root.pts.size() != space.num_robots() || root.buchi >= space.num_buchi())
        throw std::invalid_argument("root state does not belong to the product");
    for (std::size_t i = 0; i < root.pts.size(); ++i)
        if (root.pts[i] >= space.radix(i)) throw std::invalid_argument("root state does not belong to the product");

    std::uint64_t total = 1;
    bool small = true;
    for (std::size_t i = 0; i < space.num_robots(); ++i) {
        total *= space.radix(i);
        if (total > kDenseLimit) small = false;
        if (!small) break;
    }
    dense_ = small;
    if (dense_) {
        dense_index_.assign(total, npos);
        lead_ = space.num_robots();
    } else {
        std::uint64_t b = 1;
        lead_ = 0;
        while (lead_ < space.num_robots() && b * space.radix(lead_) <= kBucketLimit) b *= space.radix(lead_++);
        buckets_.assign(b, {});
    }

    auto g = make_group(root.pts);
    insert_node(g, root.buchi, 0, 0.0);
}

std::size_t PlannerTree::num_edges() const {
    std::size_t n = 0;
    for (const auto& node : nodes_) n += node.children.size();
    return n;
}

std::uint32_t PlannerTree::group_of(std::uint64_t key) const {
    if (dense_) return dense_index_[key];
    auto it = sparse_index_.find(key);
    return it == sparse_index_.end() ? npos : it->second;
}

std::uint32_t PlannerTree::make_group(const PtsState& p) {
    Group g;
    g.pts = p;
    g.key = space_->encode(p);
    space_->step_table(p, g.step);
    g.slot.assign(space_->num_buchi(), npos);
    if (goal_ == GoalKind::Suffix && space_->pts_edge(p, root_pts_)) {
        g.to_root = true;
        g.to_root_cost = space_->pts_cost(p, root_pts_);
    }
    auto id = static_cast<std::uint32_t>(groups_.size());
    if (dense_) {
        dense_index_[g.key] = id;
    } else {
        sparse_index_.emplace(g.key, id);
        std::uint64_t b = 0;
        for (std::size_t i = 0; i < lead_; ++i) b = b * space_->radix(i) + p[i];
        buckets_[b].push_back(id);
    }
    groups_.push_back(std::move(g));
    return id;
}

std::uint32_t PlannerTree::insert_node(std::uint32_t group, std::uint32_t buchi, std::uint32_t parent, double edge_w) {
    auto id = static_cast<std::uint32_t>(nodes_.size());
    Node n;
    n.group = group;
    n.buchi = buchi;
    n.parent = parent;
    n.edge_weight = edge_w;
    n.cost = id == 0 ? 0.0 : nodes_[parent].cost + edge_w;
    nodes_.push_back(std::move(n));
    if (id != 0) nodes_[parent].children.push_back(id);
    groups_[group].slot[buchi] = id;

    goal_flag_.push_back(false);
    if (is_goal(id)) {
        goal_flag_[id] = true;
        goal_nodes_.push_back(id);
        note_goal(id);
    }
    return id;
}

std::optional<std::uint32_t> PlannerTree::find(const ProductState& q) const {
    if (q.pts.size() != space_->num_robots() || q.buchi >= space_->num_buchi()) return std::nullopt;
    for (std::size_t i = 0; i < q.pts.size(); ++i)
        if (q.pts[i] >= space_->radix(i)) return std::nullopt;
    auto g = group_of(space_->encode(q.pts));
    if (g == npos || groups_[g].slot[q.buchi] == npos) return std::nullopt;
    return groups_[g].slot[q.buchi];
}

bool PlannerTree::is_goal(std::uint32_t v) const {
    const auto& n = nodes_[v];
    if (goal_ == GoalKind::Prefix) return space_->accepting(n.buchi);
    const auto& g = groups_[n.group];
    return g.to_root && steps(g, n.buchi, root_buchi_);
}

double PlannerTree::goal_cost(std::uint32_t v) const {
    const auto& n = nodes_[v];
    if (goal_ == GoalKind::Prefix) return n.cost;
    return n.cost + groups_[n.group].to_root_cost;
}

void PlannerTree::note_goal(std::uint32_t v) {
    if (goal_flag_[v]) best_goal_ = std::min(best_goal_, goal_cost(v));
}

void PlannerTree::collect_neighbours(const PtsState& p, bool forward, std::vector<std::uint32_t>& out) const {
    out.clear();
    const std::size_t n = space_->num_robots();
    std::vector<const std::vector<std::uint32_t>*> lists(n);
    std::uint64_t combos = 1;
    for (std::size_t i = 0; i < n; ++i) {
        lists[i] = forward ? &space_->succ(i, p[i]) : &space_->pred(i, p[i]);
        if (lists[i]->empty()) return;
        if (i < lead_) combos = std::min<std::uint64_t>(combos * lists[i]->size(), UINT64_MAX / 64);
    }
    auto rest_ok = [&](const PtsState& other) {
        for (std::size_t i = lead_; i < n; ++i) {
            bool ok = forward ? space_->edge(i, p[i], other[i]) : space_->edge(i, other[i], p[i]);
            if (!ok) return false;
        }
        return true;
    };

    if (combos > groups_.size()) {
        for (std::uint32_t g = 0; g < groups_.size(); ++g) {
            const auto& other = groups_[g].pts;
            bool ok = true;
            for (std::size_t i = 0; i < n && ok; ++i)
                ok = forward ? space_->edge(i, p[i], other[i]) : space_->edge(i, other[i], p[i]);
            if (ok) out.push_back(g);
        }
        return;
    }

    std::vector<std::size_t> digit(lead_, 0);
    while (true) {
        std::uint64_t key = 0;
        for (std::size_t i = 0; i < lead_; ++i) key = key * space_->radix(i) + (*lists[i])[digit[i]];
        if (dense_) {
            auto g = dense_index_[key];
            if (g != npos) out.push_back(g);
        } else {
            for (auto g : buckets_[key])
                if (rest_ok(groups_[g].pts)) out.push_back(g);
        }
        std::size_t i = lead_;
        while (i > 0) {
            --i;
            if (++digit[i] < lists[i]->size()) break;
            digit[i] = 0;
            if (i == 0) return;
        }
        if (lead_ == 0) return;
    }
}

ExtendResult PlannerTree::extend_with(const PtsState& p, std::uint32_t b, const std::vector<std::uint32_t>& preds) {
    double best = std::numeric_limits<double>::infinity();
    std::uint32_t best_node = npos;
    double best_w = 0;
    const auto nb = space_->num_buchi();
    for (auto gi : preds) {
        const auto& g = groups_[gi];
        bool have_w = false;
        double w = 0;
        for (std::uint32_t bp = 0; bp < nb; ++bp) {
            auto u = g.slot[bp];
            if (u == npos || !steps(g, bp, b)) continue;
            if (!have_w) {
                w = space_->pts_cost(g.pts, p);
                have_w = true;
            }
            double c = nodes_[u].cost + w;
            if (c < best || (c == best && u < best_node)) {
                best = c;
                best_node = u;
                best_w = w;
            }
        }
    }
    if (best_node == npos) return {};
    auto gi = group_of(space_->encode(p));
    if (gi == npos) gi = make_group(p);
    return {true, insert_node(gi, b, best_node, best_w)};
}

ExtendResult PlannerTree::extend(const ProductState& q_new) {
    if (find(q_new)) throw DuplicateNode("product state is already in the tree");
    if (q_new.pts.size() != space_->num_robots() || q_new.buchi >= space_->num_buchi())
        throw std::invalid_argument("state does not belong to the product");
    collect_neighbours(q_new.pts, false, scratch_pred_);
    return extend_with(q_new.pts, q_new.buchi, scratch_pred_);
}

void PlannerTree::propagate(std::uint32_t v) {
    note_goal(v);
    scratch_stack_.assign(nodes_[v].children.begin(), nodes_[v].children.end());
    while (!scratch_stack_.empty()) {
        auto c = scratch_stack_.back();
        scratch_stack_.pop_back();
        auto& node = nodes_[c];
        node.cost = nodes_[node.parent].cost + node.edge_weight;
        note_goal(c);
        scratch_stack_.insert(scratch_stack_.end(), node.children.begin(), node.children.end());
    }
}

std::size_t PlannerTree::rewire_with(std::uint32_t v, const std::vector<std::uint32_t>& succs) {
    // Nothing can improve if neither the tree nor cost(v) changed since the last pass.
    if (nodes_[v].rewired_at == nodes_.size() && nodes_[v].rewired_cost == nodes_[v].cost) return 0;

    const auto& gv = groups_[nodes_[v].group];
    const auto bv = nodes_[v].buchi;
    const auto nb = space_->num_buchi();
    std::vector<std::pair<std::uint32_t, double>> targets;
    for (auto gi : succs) {
        const auto& g = groups_[gi];
        bool have_w = false;
        double w = 0;
        for (std::uint32_t b = 0; b < nb; ++b) {
            auto t = g.slot[b];
            if (t == npos || t == v || t == 0 || !steps(gv, bv, b)) continue;
            if (!have_w) {
                w = space_->pts_cost(gv.pts, g.pts);
                have_w = true;
            }
            targets.emplace_back(t, w);
        }
    }
    std::sort(targets.begin(), targets.end());

    std::size_t count = 0;
    for (auto [t, w] : targets) {
        double c = nodes_[v].cost + w;
        if (!(nodes_[t].cost > c)) continue;
        auto& siblings = nodes_[nodes_[t].parent].children;
        siblings.erase(std::find(siblings.begin(), siblings.end(), t));
        nodes_[v].children.push_back(t);
        nodes_[t].parent = v;
        nodes_[t].edge_weight = w;
        nodes_[t].cost = c;
        propagate(t);
        ++count;
    }
    nodes_[v].rewired_at = nodes_.size();
    nodes_[v].rewired_cost = nodes_[v].cost;
    return count;
}

std::size_t PlannerTree::rewire(std::uint32_t v) {
    if (v >= nodes_.size()) throw std::out_of_range("no such tree node");
    collect_neighbours(pts(v), true, scratch_succ_);
    return rewire_with(v, scratch_succ_);
}

std::vector<ProductState> PlannerTree::find_path(std::uint32_t goal) const {
    if (goal >= nodes_.size()) throw std::out_of_range("no such tree node");
    std::vector<ProductState> out;
    for (auto v = goal;; v = nodes_[v].parent) {
        out.push_back(state(v));
        if (v == 0) break;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::optional<std::string> PlannerTree::check_invariants() const {
    const auto n = nodes_.size();
    if (n == 0) return "tree is empty";
    if (nodes_[0].parent != 0) return "root is not its own parent";
    if (nodes_[0].cost != 0.0) return "root cost is not zero";
    if (num_edges() != n - 1) return "edge count differs from node count minus one";
    for (std::uint32_t v = 1; v < n; ++v) {
        const auto& node = nodes_[v];
        if (node.parent >= n || node.parent == v) return "node " + std::to_string(v) + " has a bad parent";
        const auto& pc = nodes_[node.parent].children;
        if (std::find(pc.begin(), pc.end(), v) == pc.end())
            return "node " + std::to_string(v) + " is missing from its parent's children";
        if (node.cost != nodes_[node.parent].cost + node.edge_weight)
            return "node " + std::to_string(v) + " breaks the parent cost recurrence";
        const auto& gp = groups_[nodes_[node.parent].group];
        const auto& gv = groups_[node.group];
        if (!space_->pts_edge(gp.pts, gv.pts) || !steps(gp, nodes_[node.parent].buchi, node.buchi))
            return "edge into node " + std::to_string(v) + " is not a product transition";
        if (node.edge_weight != space_->pts_cost(gp.pts, gv.pts))
            return "edge into node " + std::to_string(v) + " has the wrong weight";
        std::size_t steps_up = 0;
        for (auto u = v; u != 0; u = nodes_[u].parent)
            if (++steps_up > n) return "parent chain of node " + std::to_string(v) + " does not reach the root";
    }
    for (std::uint32_t v = 0; v < n; ++v) {
        const auto& g = groups_[nodes_[v].group];
        if (g.slot[nodes_[v].buchi] != v) return "index does not map node " + std::to_string(v) + " to itself";
    }
    return std::nullopt;
}

std::optional<Sample> sample(const PlannerTree& tree, const SamplerConfig& cfg, Rng& rng) {
    const auto n = tree.size();
    std::uint64_t r = 0;
    if (cfg.f_rand == FRand::NewestHalf && !rng.coin()) {
        std::uint64_t half = (n + 1) / 2;
        r = n - half + rng.below(half);
    } else {
        r = rng.below(n);
    }
    Sample s;
    s.rand_node = static_cast<std::uint32_t>(r);
    const auto& from = tree.pts(s.rand_node);
    const auto& space = tree.space();
    s.pts.resize(from.size());
    for (std::size_t i = 0; i < from.size(); ++i) {
        const auto& succ = space.succ(i, from[i]);
        if (succ.empty()) return std::nullopt;
        if (cfg.f_new == FNew::CheapestBiased && !rng.coin()) {
            std::uint32_t best = succ.front();
            for (auto q : succ)
                if (space.weight(i, from[i], q) < space.weight(i, from[i], best)) best = q;
            s.pts[i] = best;
        } else {
            s.pts[i] = succ[rng.below(succ.size())];
        }
    }
    return s;
}

IterationStats PlannerTree::iterate(const SamplerConfig& cfg, Rng& rng) {
    IterationStats st;
    auto s = sample(*this, cfg, rng);
    if (s) {
        const auto nb = space_->num_buchi();
        const auto rand_group = nodes_[s->rand_node].group;
        const auto rand_b = nodes_[s->rand_node].buchi;
        for (std::size_t w = 0; w < space_->words(); ++w)
            if (groups_[rand_group].step[rand_b * space_->words() + w]) st.growth_possible = true;

        collect_neighbours(s->pts, false, scratch_pred_);
        collect_neighbours(s->pts, true, scratch_succ_);
        const auto key = space_->encode(s->pts);
        const bool had_group = group_of(key) != npos;
        bool patched = false;

        for (std::uint32_t b = 0; b < nb; ++b) {
            auto g = group_of(key);
            auto existing = g == npos ? npos : groups_[g].slot[b];
            if (existing != npos) {
                if (steps(groups_[rand_group], rand_b, b)) ++st.eligible;
                st.rewired += static_cast<std::uint32_t>(rewire_with(existing, scratch_succ_));
                continue;
            }
            auto r = extend_with(s->pts, b, scratch_pred_);
            if (!r.added) {
                ++st.rejected;
                continue;
            }
            ++st.extended;
            if (!had_group && !patched) {
                patched = true;
                if (space_->pts_edge(s->pts, s->pts)) {
                    auto ng = group_of(key);
                    scratch_pred_.push_back(ng);
                    scratch_succ_.push_back(ng);
                }
            }
            st.rewired += static_cast<std::uint32_t>(rewire_with(r.node, scratch_succ_));
        }
    }
    st.tree_size = nodes_.size();
    st.best_goal_cost = best_goal_;
    return st;
}

TreeResult construct_tree(GoalKind goal, const ProductSpace& space, const ProductState& root, std::uint64_t n_max,
                          const SamplerConfig& cfg, std::uint64_t tree_id, bool keep_stats) {
    Rng rng = Rng::stream(cfg.seed, tree_id);
    TreeResult res{PlannerTree(space, root, goal), {}, {}, 0, 0, std::nullopt};
    if (!res.tree.goals().empty()) res.first_goal_iteration = 0;
    if (keep_stats) res.stats.reserve(n_max);
    const auto start = std::chrono::steady_clock::now();
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        auto st = res.tree.iterate(cfg, rng);
        st.iteration = n;
        if (cfg.timing)
            st.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        if (st.growth_possible && st.extended + st.eligible == 0) ++res.growth_violations;
        if (st.rejected + st.extended + st.eligible > space.num_buchi()) ++res.bound_violations;
        if (!res.first_goal_iteration && !res.tree.goals().empty()) res.first_goal_iteration = n;
        if (keep_stats) res.stats.push_back(st);
    }
    res.goals = res.tree.goals();
    return res;
}

}  // namespace ltlplan
