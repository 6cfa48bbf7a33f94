#pragma once

#include "ltlplan/automaton.hpp"
#include "ltlplan/model.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

namespace ltlplan {

struct ProductState {
    PtsState pts;
    std::uint32_t buchi = 0;

    bool operator==(const ProductState&) const = default;
    auto operator<=>(const ProductState&) const = default;
};

/// FNV-1a over the state indices; identical across runs and platforms.
std::uint64_t stable_hash(const ProductState& q);

struct ProductStateHash {
    std::size_t operator()(const ProductState& q) const { return static_cast<std::size_t>(stable_hash(q)); }
};

/// The NBA edge is read under the label of the source PTS state.
bool pba_transition(const MultiRobotModel& model, const Nba& nba, const ProductState& q, const ProductState& q2);
/// Throws InvalidTransition when there is no product transition.
double pba_weight(const MultiRobotModel& model, const Nba& nba, const ProductState& q, const ProductState& q2);
bool is_prefix_goal(const Nba& nba, const ProductState& q);
bool is_suffix_goal(const MultiRobotModel& model, const Nba& nba, const ProductState& q, const ProductState& root);

/// Lazily enumerates product successors, ordered lexicographically by
/// (robot 1 edge index, ..., robot N edge index, NBA edge index). NBA edges
/// leading to an already produced Büchi state are skipped.
class SuccessorCursor {
public:
    SuccessorCursor(const MultiRobotModel& model, const Nba& nba, const ProductState& q);
    std::optional<ProductState> next();

private:
    const MultiRobotModel& model_;
    const ProductState source_;
    std::vector<std::uint32_t> buchi_;  // enabled NBA targets, first-edge order
    std::vector<std::size_t> digit_;
    std::size_t b_ = 0;
    bool done_ = false;
};

std::vector<ProductState> pba_successors(const MultiRobotModel& model, const Nba& nba, const ProductState& q);

/// Compiled lookup tables over a model and an automaton: dense per-robot
/// weight matrices, label bitsets over the automaton alphabet and compiled guards.
class ProductSpace {
public:
    ProductSpace(const MultiRobotModel& model, const Nba& nba);

    const MultiRobotModel& model() const { return model_; }
    const Nba& nba() const { return nba_; }
    std::size_t num_robots() const { return model_.robots.size(); }
    std::uint32_t num_buchi() const { return nb_; }
    /// 64-bit words in one Büchi-state bitset.
    std::size_t words() const { return words_; }

    bool edge(std::size_t robot, std::uint32_t a, std::uint32_t b) const {
        return has_[robot][a * radix_[robot] + b] != 0;
    }
    double weight(std::size_t robot, std::uint32_t a, std::uint32_t b) const {
        return w_[robot][a * radix_[robot] + b];
    }
    const std::vector<std::uint32_t>& succ(std::size_t robot, std::uint32_t q) const {
        return model_.robots[robot].successors(q);
    }
    const std::vector<std::uint32_t>& pred(std::size_t robot, std::uint32_t q) const {
        return model_.robots[robot].predecessors(q);
    }
    std::uint32_t radix(std::size_t robot) const { return radix_[robot]; }

    bool pts_edge(const PtsState& a, const PtsState& b) const;
    /// Sum of robot weights in robot order; same rounding as pts_weight.
    double pts_cost(const PtsState& a, const PtsState& b) const;
    bool accepting(std::uint32_t b) const { return accepting_[b]; }

    std::uint64_t encode(const PtsState& q) const;
    PtsState decode(std::uint64_t key) const;

    /// Successor bitsets of every Büchi state under the label of `q`:
    /// words() words per state, `out` resized to num_buchi() * words().
    void step_table(const PtsState& q, std::vector<std::uint64_t>& out) const;

private:
    struct CGuard {
        Guard::Kind kind;
        std::uint32_t atom = 0;
        std::vector<CGuard> children;
        bool eval(const std::vector<std::uint64_t>& bits) const;
    };
    static CGuard compile(const Guard& g, const std::vector<std::string>& alphabet);

    const MultiRobotModel& model_;
    const Nba& nba_;
    std::uint32_t nb_ = 0;
    std::size_t words_ = 1;
    std::vector<std::uint32_t> radix_;
    std::vector<std::vector<std::uint8_t>> has_;
    std::vector<std::vector<double>> w_;
    std::vector<std::vector<std::vector<std::uint64_t>>> label_bits_;  // [robot][state] -> alphabet bitset
    std::size_t label_words_ = 1;
    std::vector<CGuard> guards_;
    std::vector<bool> accepting_;
};

}  // namespace ltlplan
