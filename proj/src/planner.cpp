#include "ltlplan/planner.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace ltlplan {

namespace {

struct SuffixOutcome {
    bool found = false;
    double cost = 0;
    std::vector<ProductState> path;  // accepting state around to itself
    bool trivial = false;
    TreeReport report;
    bool built = false;
};

SuffixOutcome run_suffix(const ProductSpace& space, const ProductState& root, const PlannerConfig& cfg,
                         std::uint32_t k, std::size_t a) {
    SuffixOutcome out;
    out.built = true;
    auto res = construct_tree(GoalKind::Suffix, space, root, cfg.n_suf, cfg.sampler, suffix_tree_id(k, a),
                              cfg.keep_stats);
    std::uint32_t best = PlannerTree::npos;
    double best_cost = 0;
    for (auto e : res.goals) {
        double c = res.tree.goal_cost(e);
        if (best == PlannerTree::npos || c < best_cost) {
            best = e;
            best_cost = c;
        }
    }
    if (best != PlannerTree::npos) {
        out.found = true;
        out.cost = best_cost;
        out.path = res.tree.find_path(best);
        out.path.push_back(root);
    }
    out.report.kind = GoalKind::Suffix;
    out.report.initial_buchi = k;
    out.report.accepting_index = a;
    out.report.root = root;
    out.report.tree_size = res.tree.size();
    out.report.goals = res.goals.size();
    out.report.first_goal_iteration = res.first_goal_iteration;
    out.report.growth_violations = res.growth_violations;
    out.report.bound_violations = res.bound_violations;
    out.report.stats = std::move(res.stats);
    return out;
}

template <typename Fn>
void run_tasks(std::size_t count, unsigned workers, Fn&& fn) {
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < std::min<std::size_t>(workers, count); ++w) {
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < count;) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace

Plan assemble_plan(const MultiRobotModel& model, std::vector<ProductState> product_prefix,
                   std::vector<ProductState> product_suffix, std::uint32_t initial_buchi, bool trivial_suffix) {
    if (product_prefix.empty() || product_suffix.size() < 2)
        throw std::invalid_argument("plan paths are too short");
    Plan plan;
    for (const auto& q : product_prefix) plan.prefix.push_back(q.pts);
    for (std::size_t i = 1; i < product_suffix.size(); ++i) plan.suffix.push_back(product_suffix[i].pts);
    for (std::size_t i = 1; i < product_prefix.size(); ++i)
        plan.prefix_cost += pts_weight(model, product_prefix[i - 1].pts, product_prefix[i].pts);
    for (std::size_t i = 1; i < product_suffix.size(); ++i)
        plan.suffix_cost += pts_weight(model, product_suffix[i - 1].pts, product_suffix[i].pts);
    plan.total_cost = plan.prefix_cost + plan.suffix_cost;
    plan.provenance.initial_buchi = initial_buchi;
    plan.provenance.accepting = product_prefix.back();
    plan.provenance.suffix_end = product_suffix[product_suffix.size() - 2];
    plan.provenance.trivial_suffix = trivial_suffix;
    plan.product_prefix = std::move(product_prefix);
    plan.product_suffix = std::move(product_suffix);
    return plan;
}

SynthesisResult synthesize(const MultiRobotModel& model, const Nba& nba, const PlannerConfig& cfg) {
    if (cfg.n_pre < 1 || cfg.n_suf < 1) throw std::invalid_argument("iteration budgets must be at least 1");
    ProductSpace space(model, nba);
    const PtsState q0 = initial_state(model);
    SynthesisResult result;

    struct Best {
        double cost;
        std::vector<ProductState> prefix, suffix;
        std::uint32_t k;
        bool trivial;
    };
    std::optional<Best> best;

    for (std::uint32_t k = 0; k < nba.initial.size(); ++k) {
        const ProductState root{q0, nba.initial[k]};
        auto pre = construct_tree(GoalKind::Prefix, space, root, cfg.n_pre, cfg.sampler, prefix_tree_id(k),
                                  cfg.keep_stats);
        TreeReport rep;
        rep.kind = GoalKind::Prefix;
        rep.initial_buchi = k;
        rep.root = root;
        rep.tree_size = pre.tree.size();
        rep.goals = pre.goals.size();
        rep.first_goal_iteration = pre.first_goal_iteration;
        rep.growth_violations = pre.growth_violations;
        rep.bound_violations = pre.bound_violations;
        rep.stats = std::move(pre.stats);
        result.growth_violations += rep.growth_violations;
        result.bound_violations += rep.bound_violations;
        result.trees.push_back(std::move(rep));
        if (pre.goals.empty()) continue;
        result.prefix_goal_found = true;

        std::vector<SuffixOutcome> outcomes(pre.goals.size());
        for (std::size_t a = 0; a < pre.goals.size(); ++a) {
            auto q = pre.tree.state(pre.goals[a]);
            if (pba_transition(model, nba, q, q) && pts_weight(model, q.pts, q.pts) == 0.0) {
                outcomes[a].found = true;
                outcomes[a].trivial = true;
                outcomes[a].path = {q, q};
            }
        }
        run_tasks(pre.goals.size(), cfg.workers, [&](std::size_t a) {
            if (outcomes[a].trivial) return;
            outcomes[a] = run_suffix(space, pre.tree.state(pre.goals[a]), cfg, k, a);
        });

        std::optional<std::size_t> best_a;
        double best_cost = 0;
        for (std::size_t a = 0; a < outcomes.size(); ++a) {
            if (outcomes[a].built) {
                result.growth_violations += outcomes[a].report.growth_violations;
                result.bound_violations += outcomes[a].report.bound_violations;
                result.trees.push_back(std::move(outcomes[a].report));
            }
            if (!outcomes[a].found) continue;
            double j = pre.tree.goal_cost(pre.goals[a]) + outcomes[a].cost;
            if (!best_a || j < best_cost) {
                best_a = a;
                best_cost = j;
            }
        }
        if (!best_a) continue;
        if (!best || best_cost < best->cost) {
            best = Best{best_cost, pre.tree.find_path(pre.goals[*best_a]), std::move(outcomes[*best_a].path), k,
                        outcomes[*best_a].trivial};
        }
    }

    if (best) {
        result.plan = assemble_plan(model, std::move(best->prefix), std::move(best->suffix), best->k, best->trivial);
        auto check = validate_plan(model, nba, *result.plan);
        if (!check.ok) throw std::logic_error("synthesized plan failed validation: " + check.reason);
    }
    return result;
}

LassoWord plan_word(const MultiRobotModel& model, const Plan& plan) {
    LassoWord w;
    for (const auto& q : plan.prefix) w.prefix.push_back(pts_label(model, q));
    for (const auto& q : plan.suffix) w.cycle.push_back(pts_label(model, q));
    return w;
}

PlanCheck validate_plan(const MultiRobotModel& model, const Nba& nba, const Plan& plan) {
    auto fail = [](std::string why) { return PlanCheck{false, std::move(why)}; };
    if (plan.prefix.empty()) return fail("prefix is empty");
    if (plan.suffix.empty()) return fail("suffix is empty");
    const auto n = model.robots.size();
    auto valid_state = [&](const PtsState& q) {
        if (q.size() != n) return false;
        for (std::size_t i = 0; i < n; ++i)
            if (q[i] >= model.robots[i].num_states()) return false;
        return true;
    };
    for (const auto* seq : {&plan.prefix, &plan.suffix})
        for (const auto& q : *seq)
            if (!valid_state(q)) return fail("plan contains a state outside the model");
    if (plan.prefix.front() != initial_state(model)) return fail("prefix does not start at the initial state");

    double pre = 0;
    for (std::size_t i = 1; i < plan.prefix.size(); ++i) {
        if (!pts_transition(model, plan.prefix[i - 1], plan.prefix[i]))
            return fail("prefix step " + std::to_string(i) + " is not a transition");
        pre += pts_weight(model, plan.prefix[i - 1], plan.prefix[i]);
    }
    if (!pts_transition(model, plan.prefix.back(), plan.suffix.front()))
        return fail("prefix end does not lead to the suffix start");
    double suf = pts_weight(model, plan.prefix.back(), plan.suffix.front());
    for (std::size_t i = 1; i < plan.suffix.size(); ++i) {
        if (!pts_transition(model, plan.suffix[i - 1], plan.suffix[i]))
            return fail("suffix step " + std::to_string(i) + " is not a transition");
        suf += pts_weight(model, plan.suffix[i - 1], plan.suffix[i]);
    }
    if (plan.suffix.back() != plan.prefix.back()) return fail("suffix does not return to the prefix end");
    if (!pts_transition(model, plan.suffix.back(), plan.suffix.front()))
        return fail("suffix does not wrap around");
    if (std::abs(pre - plan.prefix_cost) > 1e-9) return fail("prefix cost does not match its edges");
    if (std::abs(suf - plan.suffix_cost) > 1e-9) return fail("suffix cost does not match its edges");
    if (std::abs(plan.prefix_cost + plan.suffix_cost - plan.total_cost) > 1e-9)
        return fail("total cost is not prefix plus suffix");
    if (!nba_accepts_lasso(nba, plan_word(model, plan))) return fail("automaton rejects the plan's trace");
    return {};
}

}  // namespace ltlplan
