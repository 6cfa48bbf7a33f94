#include "ltlplan/scenario.hpp"

#include "ltlplan/rng.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ltlplan {

namespace {

std::string region(int k) { return "l" + std::to_string(k); }

Wts grid_robot(const GridSpec& spec, int id, int initial) {
    Wts r;
    r.id = id;
    const int cells = spec.rows * spec.cols;
    for (int k = 1; k <= cells; ++k) r.states.push_back(region(k));
    r.initial = static_cast<std::uint32_t>(initial - 1);
    auto at = [&](int k) { return std::make_pair((k - 1) / spec.cols, (k - 1) % spec.cols); };
    auto dist = [&](int a, int b) {
        auto [ra, ca] = at(a);
        auto [rb, cb] = at(b);
        return std::hypot(static_cast<double>(ra - rb), static_cast<double>(ca - cb));
    };
    std::set<std::pair<int, int>> pairs;
    for (int k = 1; k <= cells; ++k) {
        auto [row, col] = at(k);
        pairs.insert({k, k});
        if (col + 1 < spec.cols) pairs.insert({k, k + 1});
        if (col > 0) pairs.insert({k, k - 1});
        if (row + 1 < spec.rows) pairs.insert({k, k + spec.cols});
        if (row > 0) pairs.insert({k, k - spec.cols});
    }
    for (auto [a, b] : spec.extra) {
        if (a < 1 || b < 1 || a > cells || b > cells) throw std::invalid_argument("extra edge outside the grid");
        pairs.insert({a, b});
        pairs.insert({b, a});
    }
    for (auto [a, b] : pairs) {
        double w = a == b ? spec.self_loop_weight : dist(a, b);
        r.edges.push_back({static_cast<std::uint32_t>(a - 1), static_cast<std::uint32_t>(b - 1), w});
    }
    r.labels.resize(r.states.size());
    for (std::size_t q = 0; q < r.states.size(); ++q) r.labels[q].push_back(robot_atom(id, r.states[q]));
    return r;
}

}  // namespace

MultiRobotModel grid_model(const GridSpec& spec) {
    if (spec.rows < 1 || spec.cols < 1 || spec.robots < 1) throw std::invalid_argument("grid needs positive sizes");
    if (!spec.initial.empty() && static_cast<int>(spec.initial.size()) != spec.robots)
        throw std::invalid_argument("one initial region per robot is required");
    const int cells = spec.rows * spec.cols;
    MultiRobotModel m;
    for (int i = 1; i <= spec.robots; ++i) {
        int init = spec.initial.empty() ? (i - 1) % cells + 1 : spec.initial[static_cast<std::size_t>(i - 1)];
        if (init < 1 || init > cells) throw std::invalid_argument("initial region outside the grid");
        m.robots.push_back(grid_robot(spec, i, init));
    }
    finalize_model(m);
    return m;
}

MultiRobotModel case1_model(int robots) {
    GridSpec spec;
    spec.rows = 3;
    spec.cols = 3;
    spec.robots = robots;
    spec.extra = {{1, 5}, {3, 5}, {5, 9}};
    return grid_model(spec);
}

MultiRobotModel case2_model() {
    GridSpec spec;
    spec.rows = 4;
    spec.cols = 4;
    spec.robots = 2;
    spec.initial = {1, 16};
    spec.extra = {{1, 6}, {6, 11}, {11, 16}};
    return grid_model(spec);
}

std::vector<Team> parse_teams(const std::string& text) {
    std::vector<Team> teams;
    std::stringstream all(text);
    std::string chunk;
    while (std::getline(all, chunk, ';')) {
        auto at = chunk.find('@');
        if (at == std::string::npos) throw std::invalid_argument("team '" + chunk + "' lacks '@region'");
        Team t;
        t.region = chunk.substr(at + 1);
        if (t.region.empty()) throw std::invalid_argument("team '" + chunk + "' has an empty region");
        std::stringstream ids(chunk.substr(0, at));
        std::string id;
        while (std::getline(ids, id, ',')) {
            std::size_t used = 0;
            int v = 0;
            try {
                v = std::stoi(id, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != id.size() || v < 1) throw std::invalid_argument("bad robot id '" + id + "'");
            t.robots.push_back(v);
        }
        if (t.robots.empty()) throw std::invalid_argument("team '" + chunk + "' has no robots");
        teams.push_back(std::move(t));
    }
    if (teams.empty()) throw std::invalid_argument("no teams given");
    return teams;
}

std::string intermittent_formula(const std::vector<Team>& teams) {
    std::string out;
    for (std::size_t k = 0; k < teams.size(); ++k) {
        if (k) out += " & ";
        out += "[] <> (";
        for (std::size_t j = 0; j < teams[k].robots.size(); ++j) {
            if (j) out += " & ";
            out += robot_atom(teams[k].robots[j], teams[k].region);
        }
        out += ")";
    }
    return out;
}

std::string case1_formula() {
    return intermittent_formula(parse_teams("1,2@l5;2,3,4@l1;4,5,6@l7;6,7@l8;7,8@l4;8,9@l3")) +
           " & (!(r1@l5 & r2@l5) U r1@l7)";
}

std::string case2_formula() {
    return "[] <> (r1@l6 & <> r2@l14) & [] !r1@l9 & [] (r2@l14 -> X (!r2@l14 U r1@l4)) & <> r2@l12 & [] <> r2@l10";
}

RandomInstance random_instance(const RandomSpec& spec) {
    if (spec.robots < 1 || spec.min_states < 1 || spec.max_states < spec.min_states)
        throw std::invalid_argument("bad random instance parameters");
    Rng rng(splitmix64(spec.seed));
    static const double kWeights[] = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
    RandomInstance inst;
    for (int i = 1; i <= spec.robots; ++i) {
        Wts r;
        r.id = i;
        int n = spec.min_states + static_cast<int>(rng.below(static_cast<std::uint64_t>(spec.max_states - spec.min_states + 1)));
        for (int k = 1; k <= n; ++k) r.states.push_back(region(k));
        r.initial = static_cast<std::uint32_t>(rng.below(static_cast<std::uint64_t>(n)));
        std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
        for (std::uint32_t a = 0; a < static_cast<std::uint32_t>(n); ++a) {
            pairs.insert({a, a});
            pairs.insert({a, (a + 1) % static_cast<std::uint32_t>(n)});
            for (std::uint32_t b = 0; b < static_cast<std::uint32_t>(n); ++b) {
                if (a == b) continue;
                if (static_cast<double>(rng.below(1000)) < spec.edge_probability * 1000) pairs.insert({a, b});
            }
        }
        for (auto [a, b] : pairs) {
            double w = kWeights[rng.below(6)];
            if (a == b) w = spec.zero_self_loops ? 0.0 : w;
            r.edges.push_back({a, b, w});
        }
        r.labels.resize(r.states.size());
        for (std::size_t q = 0; q < r.states.size(); ++q) r.labels[q].push_back(robot_atom(i, r.states[q]));
        inst.model.robots.push_back(std::move(r));
    }
    finalize_model(inst.model);

    auto atom = [&]() {
        const auto& r = inst.model.robots[rng.below(inst.model.robots.size())];
        auto s = rng.below(r.states.size());
        return robot_atom(r.id, r.states[s]);
    };
    auto meet = [&]() {
        // one atom per robot for up to two robots
        if (inst.model.robots.size() < 2) return atom();
        auto i = rng.below(inst.model.robots.size());
        auto j = (i + 1 + rng.below(inst.model.robots.size() - 1)) % inst.model.robots.size();
        const auto& ri = inst.model.robots[i];
        const auto& rj = inst.model.robots[j];
        auto si = rng.below(ri.states.size());
        auto sj = rng.below(rj.states.size());
        return "(" + robot_atom(ri.id, ri.states[si]) + " & " + robot_atom(rj.id, rj.states[sj]) + ")";
    };
    std::string a = atom(), b = atom(), c = atom();
    switch (rng.below(8)) {
        case 0: inst.formula = "[] <> " + a + " & [] <> " + b; break;
        case 1: inst.formula = "<> (" + a + " & <> " + b + ")"; break;
        case 2: inst.formula = "[] <> " + a + " & [] !" + c; break;
        case 3: inst.formula = "(!" + a + " U " + b + ") & [] <> " + c; break;
        case 4: inst.formula = "[] (" + a + " -> X !" + a + ") & [] <> " + a; break;
        case 5: inst.formula = "<> " + a + " & [] <> (" + b + " | " + c + ")"; break;
        case 6: inst.formula = "[] <> " + meet(); break;
        default: inst.formula = "<> [] " + a + " & <> " + b; break;
    }
    return inst;
}

}  // namespace ltlplan
