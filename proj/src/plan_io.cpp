#include "ltlplan/plan_io.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>

namespace ltlplan {

using json = nlohmann::ordered_json;

namespace {

json regions(const MultiRobotModel& model, const PtsState& q) { return pts_names(model, q); }

json product(const MultiRobotModel& model, const Nba& nba, const ProductState& q) {
    json j;
    j["pts"] = regions(model, q.pts);
    j["buchi"] = nba.state_names[q.buchi];
    return j;
}

}  // namespace

std::string format_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string plan_to_json(const MultiRobotModel& model, const Nba& nba, const Plan& plan) {
    json j;
    j["prefix"] = json::array();
    for (const auto& q : plan.prefix) j["prefix"].push_back(regions(model, q));
    j["suffix"] = json::array();
    for (const auto& q : plan.suffix) j["suffix"].push_back(regions(model, q));
    j["prefix_cost"] = plan.prefix_cost;
    j["suffix_cost"] = plan.suffix_cost;
    j["total_cost"] = plan.total_cost;
    json prov;
    prov["initial_buchi"] = nba.state_names[nba.initial[plan.provenance.initial_buchi]];
    prov["accepting"] = product(model, nba, plan.provenance.accepting);
    prov["suffix_end"] = product(model, nba, plan.provenance.suffix_end);
    prov["trivial_suffix"] = plan.provenance.trivial_suffix;
    j["provenance"] = prov;
    j["product_prefix"] = json::array();
    for (const auto& q : plan.product_prefix) j["product_prefix"].push_back(product(model, nba, q));
    j["product_suffix"] = json::array();
    for (const auto& q : plan.product_suffix) j["product_suffix"].push_back(product(model, nba, q));
    return j.dump(2) + "\n";
}

void write_stats_csv(std::ostream& out, const std::vector<TreeReport>& trees, std::size_t flush_every) {
    out << kStatsHeader << '\n';
    std::size_t rows = 0;
    for (const auto& t : trees) {
        for (const auto& s : t.stats) {
            out << s.iteration << ',' << s.tree_size << ',' << s.rejected << ',' << s.extended << ',' << s.rewired
                << ',' << format_number(s.best_goal_cost) << ',';
            if (s.elapsed_ms >= 0) out << format_number(s.elapsed_ms);
            out << '\n';
            if (flush_every && ++rows % flush_every == 0) out.flush();
        }
    }
}

}  // namespace ltlplan
