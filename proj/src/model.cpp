#include "ltlplan/model.hpp"

#include "ltlplan/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace ltlplan {

using json = nlohmann::ordered_json;

void Wts::index() {
    const auto n = states.size();
    out_.assign(n, {});
    succ_.assign(n, {});
    pred_.assign(n, {});
    for (std::uint32_t e = 0; e < edges.size(); ++e) {
        out_[edges[e].src].push_back(e);
        succ_[edges[e].src].push_back(edges[e].dst);
        pred_[edges[e].dst].push_back(edges[e].src);
    }
    for (auto* lists : {&succ_, &pred_}) {
        for (auto& l : *lists) {
            std::sort(l.begin(), l.end());
            l.erase(std::unique(l.begin(), l.end()), l.end());
        }
    }
}

bool Wts::has_edge(std::uint32_t src, std::uint32_t dst) const {
    const auto& s = succ_[src];
    return std::binary_search(s.begin(), s.end(), dst);
}

double Wts::weight(std::uint32_t src, std::uint32_t dst) const {
    for (auto e : out_[src])
        if (edges[e].dst == dst) return edges[e].weight;
    throw InvalidTransition("robot " + std::to_string(id) + " has no edge " + states[src] + " -> " + states[dst]);
}

std::uint32_t Wts::state_index(std::string_view name) const {
    auto it = std::find(states.begin(), states.end(), name);
    return it == states.end() ? UINT32_MAX : static_cast<std::uint32_t>(it - states.begin());
}

std::string robot_atom(int id, std::string_view state) { return "r" + std::to_string(id) + "@" + std::string(state); }

void finalize_model(MultiRobotModel& model) {
    if (model.robots.empty()) throw FormatError(0, "model has no robots");
    std::set<int> ids;
    std::map<std::string, int> owner;
    model.alphabet.clear();
    model.warnings.clear();
    for (auto& r : model.robots) {
        if (r.id < 1) throw FormatError(0, "robot id must be at least 1");
        if (!ids.insert(r.id).second) throw FormatError(0, "duplicate robot id " + std::to_string(r.id));
        if (r.states.empty()) throw FormatError(0, "robot " + std::to_string(r.id) + " has no states");
        std::set<std::string> names(r.states.begin(), r.states.end());
        if (names.size() != r.states.size())
            throw FormatError(0, "robot " + std::to_string(r.id) + " has duplicate state names");
        if (r.initial >= r.states.size()) throw MissingInitial(r.id);
        std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
        for (const auto& e : r.edges) {
            if (e.src >= r.states.size() || e.dst >= r.states.size())
                throw DanglingEdge(r.id, std::to_string(std::max(e.src, e.dst)));
            if (std::isnan(e.weight) || std::isinf(e.weight))
                throw FormatError(0, "robot " + std::to_string(r.id) + ": non-finite weight");
            if (e.weight < 0) throw NegativeWeight(r.id, r.states[e.src], r.states[e.dst], e.weight);
            if (!seen.insert({e.src, e.dst}).second)
                throw FormatError(0, "robot " + std::to_string(r.id) + ": duplicate edge " + r.states[e.src] + " -> " +
                                         r.states[e.dst]);
        }
        r.labels.resize(r.states.size());
        for (auto& l : r.labels) {
            std::sort(l.begin(), l.end());
            l.erase(std::unique(l.begin(), l.end()), l.end());
            for (const auto& a : l) {
                auto [it, fresh] = owner.emplace(a, r.id);
                if (fresh) {
                    model.alphabet.push_back(a);
                } else if (it->second != r.id) {
                    throw FormatError(0, "atom '" + a + "' is used by robots " + std::to_string(it->second) + " and " +
                                             std::to_string(r.id));
                }
            }
        }
        r.index();
        std::size_t missing = 0;
        for (std::uint32_t q = 0; q < r.states.size(); ++q)
            if (!r.has_edge(q, q)) ++missing;
        if (missing > 0) {
            model.warnings.push_back("robot " + std::to_string(r.id) + ": " + std::to_string(missing) + " of " +
                                     std::to_string(r.states.size()) +
                                     " states lack a self-loop, so the robot cannot wait there");
        }
    }
}

namespace {

double parse_weight(const json& w, int robot) {
    if (w.is_number()) return w.get<double>();
    if (w.is_string()) {
        const auto& s = w.get_ref<const std::string&>();
        double v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size())
            throw FormatError(0, "robot " + std::to_string(robot) + ": bad weight '" + s + "'");
        return v;
    }
    throw FormatError(0, "robot " + std::to_string(robot) + ": weight must be a number or decimal string");
}

const json& field(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) throw FormatError(0, where + ": missing field '" + key + "'");
    return obj.at(key);
}

}  // namespace

MultiRobotModel load_model(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text.begin(), json_text.end());
    } catch (const json::parse_error& e) {
        throw FormatError(0, std::string("model is not valid JSON: ") + e.what());
    }
    MultiRobotModel model;
    const auto& robots = field(doc, "robots", "model");
    if (!robots.is_array()) throw FormatError(0, "'robots' must be an array");
    try {
        for (const auto& jr : robots) {
            Wts r;
            r.id = field(jr, "id", "robot").get<int>();
            const std::string where = "robot " + std::to_string(r.id);
            for (const auto& s : field(jr, "states", where)) r.states.push_back(s.get<std::string>());
            if (!jr.contains("initial")) throw MissingInitial(r.id);
            auto init = r.state_index(jr.at("initial").get<std::string>());
            if (init == UINT32_MAX) throw MissingInitial(r.id);
            r.initial = init;
            for (const auto& je : field(jr, "edges", where)) {
                if (!je.is_array() || je.size() != 3) throw FormatError(0, where + ": edge must be [src, dst, weight]");
                auto src_name = je[0].get<std::string>();
                auto dst_name = je[1].get<std::string>();
                auto src = r.state_index(src_name);
                if (src == UINT32_MAX) throw DanglingEdge(r.id, src_name);
                auto dst = r.state_index(dst_name);
                if (dst == UINT32_MAX) throw DanglingEdge(r.id, dst_name);
                r.edges.push_back({src, dst, parse_weight(je[2], r.id)});
            }
            r.labels.resize(r.states.size());
            for (std::uint32_t q = 0; q < r.states.size(); ++q) r.labels[q].push_back(robot_atom(r.id, r.states[q]));
            if (jr.contains("labels")) {
                for (const auto& [state, atoms] : jr.at("labels").items()) {
                    auto q = r.state_index(state);
                    if (q == UINT32_MAX) throw FormatError(0, where + ": labels name unknown state '" + state + "'");
                    for (const auto& a : atoms) r.labels[q].push_back(a.get<std::string>());
                }
            }
            model.robots.push_back(std::move(r));
        }
    } catch (const json::exception& e) {
        throw FormatError(0, std::string("malformed model: ") + e.what());
    }
    finalize_model(model);
    return model;
}

MultiRobotModel load_model_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError(0, "cannot open model file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return load_model(buf.str());
}

std::string model_to_json(const MultiRobotModel& model) {
    json doc;
    doc["robots"] = json::array();
    for (const auto& r : model.robots) {
        json jr;
        jr["id"] = r.id;
        jr["states"] = r.states;
        jr["initial"] = r.states[r.initial];
        jr["edges"] = json::array();
        for (const auto& e : r.edges) jr["edges"].push_back({r.states[e.src], r.states[e.dst], e.weight});
        json extra = json::object();
        for (std::uint32_t q = 0; q < r.states.size(); ++q) {
            json atoms = json::array();
            auto def = robot_atom(r.id, r.states[q]);
            for (const auto& a : r.labels[q])
                if (a != def) atoms.push_back(a);
            if (!atoms.empty()) extra[r.states[q]] = atoms;
        }
        if (!extra.empty()) jr["labels"] = extra;
        doc["robots"].push_back(jr);
    }
    return doc.dump(2) + "\n";
}

PtsState initial_state(const MultiRobotModel& model) {
    PtsState q;
    for (const auto& r : model.robots) q.push_back(r.initial);
    return q;
}

bool pts_transition(const MultiRobotModel& model, const PtsState& q, const PtsState& q2) {
    for (std::size_t i = 0; i < model.robots.size(); ++i)
        if (!model.robots[i].has_edge(q[i], q2[i])) return false;
    return true;
}

double pts_weight(const MultiRobotModel& model, const PtsState& q, const PtsState& q2) {
    double w = 0;
    for (std::size_t i = 0; i < model.robots.size(); ++i) w += model.robots[i].weight(q[i], q2[i]);
    return w;
}

LabelSet pts_label(const MultiRobotModel& model, const PtsState& q) {
    LabelSet out;
    for (std::size_t i = 0; i < model.robots.size(); ++i)
        out.insert(model.robots[i].labels[q[i]].begin(), model.robots[i].labels[q[i]].end());
    return out;
}

std::vector<std::uint32_t> robot_reachable(const MultiRobotModel& model, std::size_t robot, std::uint32_t q) {
    return model.robots.at(robot).successors(q);
}

std::uint64_t pts_state_count(const MultiRobotModel& model) {
    std::uint64_t n = 1;
    for (const auto& r : model.robots) {
        auto k = static_cast<std::uint64_t>(r.num_states());
        if (k != 0 && n > std::numeric_limits<std::uint64_t>::max() / k) return std::numeric_limits<std::uint64_t>::max();
        n *= k;
    }
    return n;
}

std::vector<std::string> pts_names(const MultiRobotModel& model, const PtsState& q) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < model.robots.size(); ++i) out.push_back(model.robots[i].states[q[i]]);
    return out;
}

}  // namespace ltlplan
