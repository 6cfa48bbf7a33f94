#pragma once

#include "ltlplan/product.hpp"
#include "ltlplan/rng.hpp"

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace ltlplan {

/// Distribution over tree nodes for the node to grow from.
enum class FRand {
    Uniform,
    NewestHalf,  // half the mass uniform, half on the newest half of the nodes
};

/// Per-robot distribution over one-hop successors.
enum class FNew {
    Uniform,
    CheapestBiased,  // half the mass uniform, half on the cheapest edge
};

struct SamplerConfig {
    std::uint64_t seed = 0;
    FRand f_rand = FRand::Uniform;
    FNew f_new = FNew::Uniform;
    bool timing = false;  // fill IterationStats::elapsed_ms
};

struct IterationStats {
    std::uint64_t iteration = 0;  // 1-based
    std::size_t tree_size = 0;
    std::uint32_t rejected = 0;
    std::uint32_t extended = 0;
    std::uint32_t rewired = 0;
    std::uint32_t eligible = 0;  // present candidates the sampled node can step to
    double best_goal_cost = std::numeric_limits<double>::infinity();
    double elapsed_ms = -1;  // negative when timing is off
    bool growth_possible = false;  // the sampled node has a product successor
};

enum class GoalKind {
    Prefix,  // accepting Büchi component
    Suffix,  // one product step back to the root
};

struct ExtendResult {
    bool added = false;
    std::uint32_t node = 0;
};

struct Sample {
    std::uint32_t rand_node = 0;
    PtsState pts;
};

class PlannerTree {
public:
    static constexpr std::uint32_t npos = UINT32_MAX;

    PlannerTree(const ProductSpace& space, const ProductState& root, GoalKind goal);

    const ProductSpace& space() const { return *space_; }
    std::size_t size() const { return nodes_.size(); }
    std::uint32_t root() const { return 0; }
    GoalKind goal_kind() const { return goal_; }

    ProductState state(std::uint32_t v) const { return {pts(v), nodes_[v].buchi}; }
    const PtsState& pts(std::uint32_t v) const { return groups_[nodes_[v].group].pts; }
    std::uint32_t buchi(std::uint32_t v) const { return nodes_[v].buchi; }
    std::uint32_t parent(std::uint32_t v) const { return nodes_[v].parent; }
    double cost(std::uint32_t v) const { return nodes_[v].cost; }
    double edge_weight(std::uint32_t v) const { return nodes_[v].edge_weight; }
    const std::vector<std::uint32_t>& children(std::uint32_t v) const { return nodes_[v].children; }
    std::size_t num_edges() const;

    std::optional<std::uint32_t> find(const ProductState& q) const;

    bool is_goal(std::uint32_t v) const;
    /// Prefix: cost(v). Suffix: cost(v) plus the closing step to the root.
    double goal_cost(std::uint32_t v) const;
    /// Goal nodes in insertion order.
    const std::vector<std::uint32_t>& goals() const { return goal_nodes_; }
    double best_goal_cost() const { return best_goal_; }

    /// Attaches q_new to its cheapest parent (ties: smallest node index).
    /// Throws DuplicateNode if q_new is already in the tree.
    ExtendResult extend(const ProductState& q_new);
    /// Reparents every node q_new can step to when that is strictly cheaper.
    /// Returns the number of reparented nodes.
    std::size_t rewire(std::uint32_t v);

    /// Root-to-goal chain of product states.
    std::vector<ProductState> find_path(std::uint32_t goal) const;

    /// First violated structural invariant, if any.
    std::optional<std::string> check_invariants() const;

    /// One iteration of tree construction: sample, then extend or rewire
    /// for every Büchi state in index order.
    IterationStats iterate(const SamplerConfig& cfg, Rng& rng);

private:
    struct Node {
        std::uint32_t group;
        std::uint32_t buchi;
        std::uint32_t parent;
        double cost;
        double edge_weight;
        std::vector<std::uint32_t> children;
        std::size_t rewired_at = 0;  // tree size at the last full rewire pass
        double rewired_cost = -1;
    };
    struct Group {
        PtsState pts;
        std::uint64_t key;
        std::vector<std::uint64_t> step;  // Büchi successor bitsets under this label
        std::vector<std::uint32_t> slot;  // node per Büchi state
        bool to_root = false;
        double to_root_cost = 0;
    };

    bool steps(const Group& g, std::uint32_t from, std::uint32_t to) const {
        return (g.step[from * space_->words() + to / 64] >> (to % 64)) & 1u;
    }
    std::uint32_t group_of(std::uint64_t key) const;
    std::uint32_t make_group(const PtsState& p);
    std::uint32_t insert_node(std::uint32_t group, std::uint32_t buchi, std::uint32_t parent, double edge_w);
    void collect_neighbours(const PtsState& p, bool forward, std::vector<std::uint32_t>& out) const;
    ExtendResult extend_with(const PtsState& p, std::uint32_t b, const std::vector<std::uint32_t>& preds);
    std::size_t rewire_with(std::uint32_t v, const std::vector<std::uint32_t>& succs);
    void note_goal(std::uint32_t v);
    void propagate(std::uint32_t v);

    const ProductSpace* space_;
    GoalKind goal_;
    PtsState root_pts_;
    std::uint32_t root_buchi_;

    std::vector<Node> nodes_;
    std::vector<Group> groups_;

    // Group lookup: dense by key when the PTS is small, hashed otherwise.
    bool dense_ = false;
    std::vector<std::uint32_t> dense_index_;
    std::unordered_map<std::uint64_t, std::uint32_t> sparse_index_;
    // Groups bucketed by the states of the leading `lead_` robots.
    std::size_t lead_ = 0;
    std::vector<std::vector<std::uint32_t>> buckets_;

    std::vector<std::uint32_t> goal_nodes_;
    std::vector<bool> goal_flag_;
    double best_goal_ = std::numeric_limits<double>::infinity();

    std::vector<std::uint32_t> scratch_pred_, scratch_succ_, scratch_stack_, scratch_targets_;
};

/// Draws a tree node by f_rand and a successor PTS state by f_new.
/// Returns nothing when some robot has no successor from the drawn node.
std::optional<Sample> sample(const PlannerTree& tree, const SamplerConfig& cfg, Rng& rng);

struct TreeResult {
    PlannerTree tree;
    std::vector<std::uint32_t> goals;
    std::vector<IterationStats> stats;
    std::uint64_t growth_violations = 0;  // iterations that could grow but neither extended nor found an eligible node
    std::uint64_t bound_violations = 0;   // iterations whose counts exceed the Büchi state count
    std::optional<std::uint64_t> first_goal_iteration;  // 0 when the root is a goal
};

/// Runs exactly n_max iterations from `root`.
TreeResult construct_tree(GoalKind goal, const ProductSpace& space, const ProductState& root, std::uint64_t n_max,
                          const SamplerConfig& cfg, std::uint64_t tree_id, bool keep_stats = true);

}  // namespace ltlplan
