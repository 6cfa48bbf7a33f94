#include "cli.hpp"

#include "ltlplan/errors.hpp"
#include "ltlplan/ltl_translate.hpp"
#include "ltlplan/oracle.hpp"
#include "ltlplan/plan_io.hpp"
#include "ltlplan/scenario.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace ltlplan::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr double kCostTolerance = 1e-9;

struct Options {
    std::string model;
    std::string ltl;
    std::string nba;
    std::uint64_t n_pre = 1000;
    std::uint64_t n_suf = 1000;
    std::string seeds = "0";
    std::string out;
    std::string config;
    bool oracle = false;
    std::uint64_t oracle_max_states = kDefaultMaxStates;
    unsigned workers = 1;
    std::size_t stats_flush = 0;
    bool timing = false;
    FRand f_rand = FRand::Uniform;
    FNew f_new = FNew::Uniform;
    double match_threshold = 0.95;
};

struct GenOptions {
    std::string kind;
    std::string out;
    std::string ltl_out;
    int rows = 3;
    int cols = 3;
    int robots = 0;
    std::string initial;
    std::string extra;
    double self_loop_weight = 0.0;
    std::string teams;
    std::uint64_t seed = 0;
    int min_states = 3;
    int max_states = 5;
    double edge_probability = 0.4;
    bool nonzero_self_loops = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::uint64_t parse_u64(const std::string& s) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        if (!s.empty() && s[0] != '-') v = std::stoull(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (s.empty() || used != s.size()) throw std::invalid_argument("bad number '" + s + "'");
    return v;
}

// "3", "0-49", "1,4,10-12"
std::vector<std::uint64_t> parse_seeds(const std::string& text) {
    std::vector<std::uint64_t> seeds;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        auto dash = part.find('-', 1);
        if (dash == std::string::npos) {
            seeds.push_back(parse_u64(part));
            continue;
        }
        auto lo = parse_u64(part.substr(0, dash));
        auto hi = parse_u64(part.substr(dash + 1));
        if (hi < lo) throw std::invalid_argument("empty seed range '" + part + "'");
        for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
    }
    if (seeds.empty()) throw std::invalid_argument("no seeds given");
    return seeds;
}

std::vector<int> parse_ints(const std::string& text) {
    std::vector<int> v;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) v.push_back(static_cast<int>(parse_u64(part)));
    return v;
}

// "1-6,6-11"
std::vector<RegionPair> parse_pairs(const std::string& text) {
    std::vector<RegionPair> v;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        auto dash = part.find('-');
        if (dash == std::string::npos) throw std::invalid_argument("edge '" + part + "' should look like 1-6");
        v.push_back({static_cast<int>(parse_u64(part.substr(0, dash))), static_cast<int>(parse_u64(part.substr(dash + 1)))});
    }
    return v;
}

// Fills options the command line left unset from a JSON object.
void apply_config(CLI::App& sub, const std::string& path) {
    json cfg;
    try {
        cfg = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw std::runtime_error("config '" + path + "': " + e.what());
    }
    if (!cfg.is_object()) throw std::runtime_error("config '" + path + "' must be a JSON object");
    for (const auto& [key, value] : cfg.items()) {
        std::string name = key;
        std::replace(name.begin(), name.end(), '_', '-');
        if (name == "config") continue;
        CLI::Option* opt = sub.get_option_no_throw("--" + name);
        if (!opt) throw std::runtime_error("config '" + path + "': unknown key '" + key + "'");
        if (opt->count() > 0) continue;
        std::vector<std::string> items;
        auto text = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
        if (value.is_array()) {
            std::string joined;
            for (const auto& v : value) joined += (joined.empty() ? "" : ",") + text(v);
            items.push_back(joined);
        } else {
            items.push_back(text(value));
        }
        for (auto& s : items) opt->add_result(s);
        opt->run_callback();
    }
}

void add_run_options(CLI::App* sub, Options& o) {
    sub->add_option("--model", o.model, "model JSON file");
    sub->add_option("--ltl", o.ltl, "LTL formula file");
    sub->add_option("--nba", o.nba, "NBA file");
    sub->add_option("--n-pre", o.n_pre, "prefix tree iterations")->check(CLI::PositiveNumber);
    sub->add_option("--n-suf", o.n_suf, "suffix tree iterations")->check(CLI::PositiveNumber);
    sub->add_option("--seed,--seeds", o.seeds, "seed list, e.g. 7 or 0-49 or 1,3,5");
    sub->add_option("--out", o.out, "output directory");
    sub->add_flag("--oracle", o.oracle, "also run the explicit oracle");
    sub->add_option("--oracle-max-states", o.oracle_max_states, "explicit product size limit");
    sub->add_option("--workers", o.workers, "worker threads for suffix trees")->check(CLI::PositiveNumber);
    sub->add_option("--stats-flush", o.stats_flush, "flush the stats CSV every N rows");
    sub->add_flag("--timing", o.timing, "record wall-clock times");
    sub->add_option("--f-rand", o.f_rand, "node distribution: uniform|newest-half")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, FRand>{{"uniform", FRand::Uniform}, {"newest-half", FRand::NewestHalf}}));
    sub->add_option("--f-new", o.f_new, "successor distribution: uniform|cheapest-biased")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, FNew>{{"uniform", FNew::Uniform}, {"cheapest-biased", FNew::CheapestBiased}}));
    sub->add_option("--match-threshold", o.match_threshold, "compare: required match rate")
        ->check(CLI::Range(0.0, 1.0));
    sub->add_option("--config", o.config, "JSON config; flags override it");
}

struct Inputs {
    MultiRobotModel model;
    Nba nba;
};

Nba load_automaton(const Options& o, spdlog::logger& log) {
    if (o.ltl.empty() == o.nba.empty()) throw std::invalid_argument("give exactly one of --ltl and --nba");
    if (!o.nba.empty()) {
        Nba nba = parse_nba(read_file(o.nba));
        validate(nba);
        return nba;
    }
    Nba nba = ltl_to_nba(parse_ltl(read_file(o.ltl)));
    log.info("translated formula: {} states, {} transitions", nba.num_states(), nba.edges.size());
    return nba;
}

Inputs load_inputs(const Options& o, spdlog::logger& log) {
    if (o.model.empty()) throw std::invalid_argument("--model is required");
    Inputs in{load_model_file(o.model), {}};
    for (const auto& w : in.model.warnings) log.warn("{}", w);
    in.nba = load_automaton(o, log);
    return in;
}

PlannerConfig planner_config(const Options& o, std::uint64_t seed) {
    PlannerConfig cfg;
    cfg.n_pre = o.n_pre;
    cfg.n_suf = o.n_suf;
    cfg.workers = o.workers;
    cfg.sampler.seed = seed;
    cfg.sampler.f_rand = o.f_rand;
    cfg.sampler.f_new = o.f_new;
    cfg.sampler.timing = o.timing;
    return cfg;
}

fs::path out_dir(const Options& o) { return o.out.empty() ? fs::path(".") : fs::path(o.out); }

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

json cost_json(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

int cmd_translate(const Options& o, std::ostream& out, spdlog::logger& log) {
    if (o.ltl.empty()) throw std::invalid_argument("--ltl is required");
    Nba nba = ltl_to_nba(parse_ltl(read_file(o.ltl)));
    if (!o.out.empty()) {
        write_file(o.out, emit_nba(nba));
        log.info("wrote {}", o.out);
    } else {
        out << emit_nba(nba);
    }
    out << "states: " << nba.num_states() << ", transitions: " << nba.edges.size()
        << ", accepting: " << nba.accepting.size() << '\n';
    return kOk;
}

int run_oracle(const Inputs& in, const Options& o, std::ostream& out) {
    OracleResult res = oracle_optimal_plan(in.model, in.nba, o.oracle_max_states);
    out << "oracle: " << res.vertices << " product states, " << res.edges << " product transitions\n";
    if (!res.plan) {
        out << "oracle: no plan\n";
        return kNoPlan;
    }
    write_file(out_dir(o) / "oracle_plan.json", plan_to_json(in.model, in.nba, *res.plan));
    out << "oracle: J* = " << format_number(res.plan->total_cost) << '\n';
    return kOk;
}

int cmd_plan(const Options& o, std::ostream& out, spdlog::logger& log) {
    auto seeds = parse_seeds(o.seeds);
    Inputs in = load_inputs(o, log);
    const fs::path dir = out_dir(o);
    bool any = false;
    for (auto seed : seeds) {
        auto res = synthesize(in.model, in.nba, planner_config(o, seed));
        std::ostringstream csv;
        write_stats_csv(csv, res.trees, o.stats_flush);
        write_file(dir / ("stats_seed" + std::to_string(seed) + ".csv"), csv.str());
        if (res.growth_violations || res.bound_violations)
            log.warn("seed {}: {} growth and {} bound violations", seed, res.growth_violations, res.bound_violations);
        if (!res.plan) {
            out << "seed " << seed << ": no plan\n";
            continue;
        }
        any = true;
        write_file(dir / ("plan_seed" + std::to_string(seed) + ".json"), plan_to_json(in.model, in.nba, *res.plan));
        out << "seed " << seed << ": cost " << format_number(res.plan->total_cost) << " (prefix "
            << format_number(res.plan->prefix_cost) << ", suffix " << format_number(res.plan->suffix_cost) << ")\n";
    }
    int code = any ? kOk : kNoPlan;
    if (o.oracle) {
        int oc = run_oracle(in, o, out);
        if (code == kOk && oc != kOk) code = oc;
    }
    return code;
}

int cmd_oracle(const Options& o, std::ostream& out, spdlog::logger& log) {
    Inputs in = load_inputs(o, log);
    return run_oracle(in, o, out);
}

int cmd_compare(const Options& o, std::ostream& out, spdlog::logger& log) {
    auto seeds = parse_seeds(o.seeds);
    Inputs in = load_inputs(o, log);

    auto t0 = std::chrono::steady_clock::now();
    OracleResult oracle = oracle_optimal_plan(in.model, in.nba, o.oracle_max_states);
    const double oracle_ms = elapsed_ms(t0);
    const double j_star = oracle.plan ? oracle.plan->total_cost : std::numeric_limits<double>::infinity();

    json report;
    report["oracle"] = {{"cost", cost_json(j_star)}, {"product_states", oracle.vertices},
                        {"product_transitions", oracle.edges}};
    if (o.timing) report["oracle"]["elapsed_ms"] = oracle_ms;
    report["n_pre"] = o.n_pre;
    report["n_suf"] = o.n_suf;
    report["buchi_states"] = in.nba.num_states();

    json runs = json::array();
    std::size_t matches = 0;
    for (auto seed : seeds) {
        auto ts = std::chrono::steady_clock::now();
        auto res = synthesize(in.model, in.nba, planner_config(o, seed));
        const double ms = elapsed_ms(ts);
        const double j = res.plan ? res.plan->total_cost : std::numeric_limits<double>::infinity();
        const bool match = res.plan && oracle.plan ? std::abs(j - j_star) <= kCostTolerance : !res.plan && !oracle.plan;
        matches += match;

        std::size_t nodes = 0, prefix_nodes = 0;
        std::uint32_t max_rejected = 0;
        std::optional<std::uint64_t> first_goal;
        std::optional<double> first_goal_ms;
        for (const auto& t : res.trees) {
            nodes += t.tree_size;
            for (const auto& s : t.stats) max_rejected = std::max(max_rejected, s.rejected);
            if (t.kind != GoalKind::Prefix) continue;
            prefix_nodes += t.tree_size;
            if (t.first_goal_iteration && (!first_goal || *t.first_goal_iteration < *first_goal)) {
                first_goal = t.first_goal_iteration;
                if (o.timing && *first_goal > 0 && *first_goal <= t.stats.size())
                    first_goal_ms = t.stats[*first_goal - 1].elapsed_ms;
            }
        }
        json r;
        r["seed"] = seed;
        r["cost"] = cost_json(j);
        r["match"] = match;
        r["prefix_tree_nodes"] = prefix_nodes;
        r["total_tree_nodes"] = nodes;
        r["tree_fraction_of_product"] = oracle.vertices ? static_cast<double>(nodes) / oracle.vertices : 0.0;
        r["first_goal_iteration"] = first_goal ? json(*first_goal) : json(nullptr);
        r["max_rejected_per_iteration"] = max_rejected;
        r["growth_violations"] = res.growth_violations;
        r["bound_violations"] = res.bound_violations;
        if (o.timing) {
            r["elapsed_ms"] = ms;
            r["first_goal_ms"] = first_goal_ms ? json(*first_goal_ms) : json(nullptr);
        }
        runs.push_back(std::move(r));
        out << "seed " << seed << ": J = " << format_number(j) << (match ? " (matches J*)" : " (differs from J*)")
            << '\n';
    }
    const double rate = static_cast<double>(matches) / static_cast<double>(seeds.size());
    report["runs"] = std::move(runs);
    report["match_rate"] = rate;
    report["match_threshold"] = o.match_threshold;
    write_file(out_dir(o) / "compare_report.json", report.dump(2) + "\n");
    out << "J* = " << format_number(j_star) << ", match rate " << format_number(rate) << " (threshold "
        << format_number(o.match_threshold) << ")\n";
    return rate >= o.match_threshold ? kOk : kBelowThreshold;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty())
        out << text;
    else
        write_file(path, text);
}

int cmd_gen(const GenOptions& g, std::ostream& out) {
    std::optional<MultiRobotModel> model;
    std::string formula;
    if (g.kind == "grid") {
        GridSpec spec;
        spec.rows = g.rows;
        spec.cols = g.cols;
        spec.robots = g.robots ? g.robots : 1;
        if (!g.initial.empty()) spec.initial = parse_ints(g.initial);
        if (!g.extra.empty()) spec.extra = parse_pairs(g.extra);
        spec.self_loop_weight = g.self_loop_weight;
        model = grid_model(spec);
    } else if (g.kind == "case1") {
        model = case1_model(g.robots ? g.robots : 9);
        formula = case1_formula();
    } else if (g.kind == "case2") {
        model = case2_model();
        formula = case2_formula();
    } else if (g.kind == "intermittent") {
        if (g.teams.empty()) throw std::invalid_argument("--teams is required");
        emit(g.out, intermittent_formula(parse_teams(g.teams)) + "\n", out);
        return kOk;
    } else if (g.kind == "random") {
        RandomSpec spec;
        spec.seed = g.seed;
        spec.robots = g.robots ? g.robots : 2;
        spec.min_states = g.min_states;
        spec.max_states = g.max_states;
        spec.edge_probability = g.edge_probability;
        spec.zero_self_loops = !g.nonzero_self_loops;
        auto inst = random_instance(spec);
        model = std::move(inst.model);
        formula = inst.formula;
    }
    emit(g.out, model_to_json(*model) + "\n", out);
    if (!g.ltl_out.empty()) {
        if (formula.empty()) throw std::invalid_argument("--ltl-out needs a kind that comes with a formula");
        write_file(g.ltl_out, formula + "\n");
    }
    return kOk;
}

spdlog::level::level_enum log_level() {
    const char* env = std::getenv("PLANNER_LOG");
    if (!env || !*env) return spdlog::level::warn;
    return spdlog::level::from_str(env);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
    spdlog::logger log("planner", sink);
    log.set_pattern("[%l] %v");
    log.set_level(log_level());

    CLI::App app("Sampling-based optimal temporal logic planning for robot teams", "planner");
    app.require_subcommand(1);
    Options o;
    GenOptions g;

    auto* translate = app.add_subcommand("translate", "translate an LTL formula into an NBA file");
    translate->add_option("--ltl", o.ltl, "LTL formula file")->required();
    translate->add_option("--out", o.out, "NBA output file (stdout if absent)");

    auto* plan = app.add_subcommand("plan", "sampling-based synthesis for each seed");
    add_run_options(plan, o);
    auto* oracle = app.add_subcommand("oracle", "exact optimal plan on the explicit product");
    add_run_options(oracle, o);
    auto* compare = app.add_subcommand("compare", "planner seeds against the oracle");
    add_run_options(compare, o);

    auto* gen = app.add_subcommand("gen", "generate scenario models and formulas");
    gen->add_option("kind", g.kind, "grid|case1|case2|intermittent|random")
        ->required()
        ->check(CLI::IsMember({"grid", "case1", "case2", "intermittent", "random"}));
    gen->add_option("--out", g.out, "output file (stdout if absent)");
    gen->add_option("--ltl-out", g.ltl_out, "formula output file for case1, case2 and random");
    gen->add_option("--rows", g.rows)->check(CLI::PositiveNumber);
    gen->add_option("--cols", g.cols)->check(CLI::PositiveNumber);
    gen->add_option("--robots", g.robots)->check(CLI::PositiveNumber);
    gen->add_option("--initial", g.initial, "1-based initial region per robot, e.g. 1,16");
    gen->add_option("--extra", g.extra, "extra undirected edges, e.g. 1-6,6-11");
    gen->add_option("--self-loop-weight", g.self_loop_weight)->check(CLI::NonNegativeNumber);
    gen->add_option("--teams", g.teams, "meeting teams, e.g. \"1,2@l5;2,3,4@l1\"");
    gen->add_option("--seed", g.seed);
    gen->add_option("--min-states", g.min_states)->check(CLI::PositiveNumber);
    gen->add_option("--max-states", g.max_states)->check(CLI::PositiveNumber);
    gen->add_option("--edge-probability", g.edge_probability)->check(CLI::Range(0.0, 1.0));
    gen->add_flag("--nonzero-self-loops", g.nonzero_self_loops, "draw self-loop weights like other edges");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
        for (auto* sub : {plan, oracle, compare})
            if (sub->parsed() && !o.config.empty()) apply_config(*sub, o.config);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }

    try {
        if (translate->parsed()) return cmd_translate(o, out, log);
        if (plan->parsed()) return cmd_plan(o, out, log);
        if (oracle->parsed()) return cmd_oracle(o, out, log);
        if (compare->parsed()) return cmd_compare(o, out, log);
        return cmd_gen(g, out);
    } catch (const CapacityExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kCapacity;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
}

}  // namespace ltlplan::cli
