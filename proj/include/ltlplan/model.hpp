#pragma once

#include "ltlplan/ltl.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace ltlplan {

/// One robot's weighted transition system.
struct Wts {
    struct Edge {
        std::uint32_t src = 0;
        std::uint32_t dst = 0;
        double weight = 0.0;
    };

    int id = 1;
    std::vector<std::string> states;
    std::uint32_t initial = 0;
    std::vector<Edge> edges;                      // file order
    std::vector<std::vector<std::string>> labels;  // per state, sorted

    std::size_t num_states() const { return states.size(); }

    /// Indices into `edges` leaving `q`, in file order.
    const std::vector<std::uint32_t>& out_edges(std::uint32_t q) const { return out_[q]; }
    /// Successor states of `q`, ascending.
    const std::vector<std::uint32_t>& successors(std::uint32_t q) const { return succ_[q]; }
    /// Predecessor states of `q`, ascending.
    const std::vector<std::uint32_t>& predecessors(std::uint32_t q) const { return pred_[q]; }

    bool has_edge(std::uint32_t src, std::uint32_t dst) const;
    /// Edge weight; the edge must exist.
    double weight(std::uint32_t src, std::uint32_t dst) const;
    std::uint32_t state_index(std::string_view name) const;  // UINT32_MAX if absent

    /// Rebuilds the adjacency indices after `states` or `edges` change.
    void index();

private:
    std::vector<std::vector<std::uint32_t>> out_;
    std::vector<std::vector<std::uint32_t>> succ_;
    std::vector<std::vector<std::uint32_t>> pred_;
};

struct MultiRobotModel {
    std::vector<Wts> robots;
    std::vector<std::string> alphabet;  // union of robot atoms, robot order
    std::vector<std::string> warnings;

    std::size_t num_robots() const { return robots.size(); }
};

using PtsState = std::vector<std::uint32_t>;

/// Parses and validates the JSON model format.
MultiRobotModel load_model(std::string_view json_text);
MultiRobotModel load_model_file(const std::filesystem::path& path);
std::string model_to_json(const MultiRobotModel& model);

/// Checks invariants, fills alphabet and warnings, and indexes every robot.
void finalize_model(MultiRobotModel& model);

/// Default atom for robot `id` at `state`.
std::string robot_atom(int id, std::string_view state);

PtsState initial_state(const MultiRobotModel& model);
bool pts_transition(const MultiRobotModel& model, const PtsState& q, const PtsState& q2);
/// Sum of robot edge weights. Throws InvalidTransition if some robot has no such edge.
double pts_weight(const MultiRobotModel& model, const PtsState& q, const PtsState& q2);
LabelSet pts_label(const MultiRobotModel& model, const PtsState& q);
/// One-hop successors of `q` in robot `robot` (0-based), ascending.
std::vector<std::uint32_t> robot_reachable(const MultiRobotModel& model, std::size_t robot, std::uint32_t q);

/// Product of the robot state counts, saturating at UINT64_MAX.
std::uint64_t pts_state_count(const MultiRobotModel& model);

/// Region names, one per robot.
std::vector<std::string> pts_names(const MultiRobotModel& model, const PtsState& q);

}  // namespace ltlplan
