#include "ltlplan/automaton.hpp"
#include "ltlplan/errors.hpp"
#include "ltlplan/ltl_translate.hpp"
#include "ltlplan/scenario.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace ltlplan;

namespace {

Nba single_true() {
    Nba n;
    n.state_names = {"s"};
    n.initial = {0};
    n.accepting = {0};
    n.edges = {{0, Guard::truth(), 0}};
    return n;
}

const char* kEventuallyA = R"(# eventually a, by hand
states: wait done
initial: wait
accepting: done
alphabet: a
wait -- !a --> wait
wait -- a --> done
done -- true --> done
)";

}  // namespace

TEST(Guard, Evaluation) {
    Nba n;
    n.state_names = {"s"};
    n.initial = {0};
    n.alphabet = {"a", "b"};
    auto g = parse_guard("a & !b");
    EXPECT_TRUE(guard_sat(n, g, {"a"}));
    EXPECT_FALSE(guard_sat(n, g, {"a", "b"}));
    EXPECT_TRUE(guard_sat(n, Guard::truth(), {}));
    EXPECT_FALSE(guard_sat(n, Guard::falsity(), {"a"}));
    EXPECT_THROW(guard_sat(n, parse_guard("c"), {"c"}), UnknownAtom);
}

TEST(Guard, ParseAndPrint) {
    EXPECT_EQ(to_string(parse_guard("a & (b | !c)")), "a & (b | !c)");
    EXPECT_EQ(parse_guard(to_string(parse_guard("(a | b) & !(c & a)"))), parse_guard("(a | b) & !(c & a)"));
    EXPECT_THROW(parse_guard("a U b"), SyntaxError);
    EXPECT_THROW(parse_guard("X a"), SyntaxError);
    EXPECT_THROW(parse_guard("a &"), SyntaxError);
    std::vector<std::string> atoms;
    collect_atoms(parse_guard("b & (a | !b)"), atoms);
    EXPECT_EQ(atoms, (std::vector<std::string>{"b", "a"}));
}

TEST(NbaSuccessors, Examples) {
    auto n = parse_nba(R"(states: q r s
initial: q
accepting: r
q -- a --> r
q -- !a --> s
)");
    EXPECT_EQ(nba_successors(n, 1, {"a"}), std::vector<std::uint32_t>{});
    EXPECT_EQ(nba_successors(n, 0, {"a"}), std::vector<std::uint32_t>{1});
    EXPECT_EQ(nba_successors(n, 0, {}), std::vector<std::uint32_t>{2});
}

TEST(NbaSuccessors, CaseTwoInitialStateWithNoEnabledEdge) {
    // r1 at l9 violates [] !r1@l9, so no initial edge is enabled.
    auto nba = parse_nba(emit_nba(ltl_to_nba(parse_ltl(case2_formula()))));
    for (auto q0 : nba.initial) EXPECT_TRUE(nba_successors(nba, q0, {"r1@l9", "r2@l1"}).empty());
    // a label that enables something exists
    bool some = false;
    for (auto q0 : nba.initial) some |= !nba_successors(nba, q0, {"r1@l1", "r2@l16"}).empty();
    EXPECT_TRUE(some);
}

TEST(NbaAcceptsLasso, Examples) {
    EXPECT_TRUE(nba_accepts_lasso(single_true(), {{}, {{}}}));
    EXPECT_TRUE(nba_accepts_lasso(single_true(), {{{"x"}}, {{"y"}, {}}}));
    auto f = support::nba_of("<> a");
    EXPECT_FALSE(nba_accepts_lasso(f, {{}, {{}}}));
    auto gf = support::nba_of("[] <> a");
    EXPECT_FALSE(nba_accepts_lasso(gf, {{{"a"}}, {{}}}));
    EXPECT_TRUE(nba_accepts_lasso(gf, {{}, {{}, {"a"}}}));
}

TEST(NbaAcceptsLasso, RotationInvariance) {
    auto words = support::all_lassos({"a", "b"}, 1, 3);
    for (const auto& f : {"[] <> (a & X b)", "a U [] b", "<> (a & X X b)"}) {
        auto nba = support::nba_of(f);
        for (const auto& w : words) {
            if (w.cycle.size() < 2) continue;
            LassoWord rot;
            rot.prefix = w.prefix;
            rot.prefix.push_back(w.cycle[0]);
            rot.cycle.assign(w.cycle.begin() + 1, w.cycle.end());
            rot.cycle.push_back(w.cycle[0]);
            EXPECT_EQ(nba_accepts_lasso(nba, w), nba_accepts_lasso(nba, rot)) << f;
        }
    }
}

TEST(NbaFormat, RoundTripSingleState) {
    auto n = single_true();
    auto back = parse_nba(emit_nba(n));
    EXPECT_EQ(back.num_states(), 1u);
    EXPECT_EQ(back.initial, n.initial);
    EXPECT_EQ(back.accepting, n.accepting);
    ASSERT_EQ(back.edges.size(), 1u);
    EXPECT_EQ(back.edges[0], n.edges[0]);
    EXPECT_EQ(emit_nba(back), emit_nba(n));
}

TEST(NbaFormat, RoundTripTranslatedAutomata) {
    for (const auto& f : support::translator_corpus()) {
        auto n = support::nba_of(f);
        auto back = parse_nba(emit_nba(n));
        EXPECT_EQ(back.state_names, n.state_names) << f;
        EXPECT_EQ(back.initial, n.initial) << f;
        EXPECT_EQ(back.accepting, n.accepting) << f;
        EXPECT_EQ(back.edges, n.edges) << f;
        EXPECT_EQ(emit_nba(back), emit_nba(n)) << f;
    }
}

TEST(NbaFormat, Errors) {
    try {
        parse_nba("states: a b\ninitial: a\naccepting: c\n");
        FAIL();
    } catch (const FormatError& e) {
        EXPECT_EQ(e.line(), 3u);
    }
    EXPECT_THROW(parse_nba("initial: a\n"), FormatError);
    EXPECT_THROW(parse_nba("states: a\ninitial: a\na -- x --> b\n"), FormatError);
    EXPECT_THROW(parse_nba("states: a\ninitial: a\na -- x & --> a\n"), FormatError);
    EXPECT_THROW(parse_nba("states: a\ninitial: a\nalphabet: y\na -- x --> a\n"), FormatError);
    EXPECT_THROW(parse_nba("states: a a\ninitial: a\n"), FormatError);
    EXPECT_THROW(parse_nba("states: a\ninitial: a\nbogus: 1\n"), FormatError);
}

TEST(NbaFormat, HandWrittenEventuallyAgreesWithSemantics) {
    auto nba = parse_nba(kEventuallyA);
    auto phi = parse_ltl("<> a");
    for (const auto& w : support::all_lassos({"a"}, 3, 2)) EXPECT_EQ(nba_accepts_lasso(nba, w), eval_lasso(phi, w));
}

TEST(Translate, TrueIsOneAcceptingState) {
    auto n = support::nba_of("true");
    ASSERT_EQ(n.num_states(), 1u);
    EXPECT_EQ(n.initial, std::vector<std::uint32_t>{0});
    EXPECT_EQ(n.accepting, std::vector<std::uint32_t>{0});
    ASSERT_EQ(n.edges.size(), 1u);
    EXPECT_EQ(n.edges[0].guard, Guard::truth());
    EXPECT_EQ(n.edges[0].src, 0u);
    EXPECT_EQ(n.edges[0].dst, 0u);
}

TEST(Translate, FalseHasEmptyLanguage) {
    auto n = support::nba_of("false");
    for (const auto& w : support::all_lassos({"a"}, 1, 1)) EXPECT_FALSE(nba_accepts_lasso(n, w));
}

TEST(Translate, EventuallyAgreesOnBoundedCorpus) {
    auto phi = parse_ltl("<> a");
    auto nba = ltl_to_nba(phi);
    EXPECT_GE(nba.accepting.size(), 1u);
    for (const auto& w : support::all_lassos({"a"}, 3, 2)) EXPECT_EQ(nba_accepts_lasso(nba, w), eval_lasso(phi, w));
}

TEST(Translate, DegeneralizationPreservesAcceptance) {
    auto words = support::all_lassos({"a", "b", "c"}, 2, 2);
    for (const auto& f : support::translator_corpus()) {
        auto phi = parse_ltl(f);
        auto tgba = ltl_to_tgba(phi);
        auto nba = degeneralize(tgba);
        std::size_t bad = 0;
        for (std::size_t i = 0; i < words.size(); i += 3) {
            bool t = tgba_accepts_lasso(tgba, words[i]);
            bad += t != nba_accepts_lasso(nba, words[i]);
            bad += t != eval_lasso(phi, words[i]);
        }
        EXPECT_EQ(bad, 0u) << f;
    }
}

TEST(Translate, CaseOneSize) {
    auto nba = support::nba_of(case1_formula());
    EXPECT_EQ(nba.num_states(), 8u);
    EXPECT_EQ(nba.edges.size(), 36u);
    EXPECT_EQ(nba.accepting.size(), 1u);
}

TEST(Translate, FullCaseFormulasOnSampledRobotWords) {
    // Letters are robot configurations: exactly one region atom per robot.
    for (int which = 1; which <= 2; ++which) {
        const int robots = which == 1 ? 9 : 2;
        const int regions = which == 1 ? 9 : 16;
        auto phi = parse_ltl(which == 1 ? case1_formula() : case2_formula());
        auto nba = ltl_to_nba(phi);
        Rng rng(2024 + which);
        auto letter = [&] {
            LabelSet s;
            for (int r = 1; r <= robots; ++r)
                s.insert(robot_atom(r, "l" + std::to_string(1 + rng.below(static_cast<std::uint64_t>(regions)))));
            return s;
        };
        int accepted = 0;
        for (int k = 0; k < 3000; ++k) {
            LassoWord w;
            auto plen = rng.below(4), clen = 1 + rng.below(6);
            for (std::uint64_t i = 0; i < plen; ++i) w.prefix.push_back(letter());
            for (std::uint64_t i = 0; i < clen; ++i) w.cycle.push_back(letter());
            if (which == 1 && k % 2 == 0) {
                // plant every meeting in the cycle so that accepted words occur
                for (auto& l : w.cycle) l.clear();
                w.cycle.resize(6);
                const char* meet[6][3] = {{"r1@l5", "r2@l5", nullptr}, {"r2@l1", "r3@l1", "r4@l1"},
                                          {"r4@l7", "r5@l7", "r6@l7"}, {"r6@l8", "r7@l8", nullptr},
                                          {"r7@l4", "r8@l4", nullptr}, {"r8@l3", "r9@l3", nullptr}};
                for (int m = 0; m < 6; ++m)
                    for (auto* a : meet[m])
                        if (a) w.cycle[static_cast<std::size_t>(m)].insert(a);
                if (rng.coin()) w.prefix.insert(w.prefix.begin(), LabelSet{"r1@l7"});
            }
            bool expect = eval_lasso(phi, w);
            accepted += expect;
            ASSERT_EQ(nba_accepts_lasso(nba, w), expect) << "case " << which << " word " << k;
        }
        if (which == 1) EXPECT_GT(accepted, 0);
    }
}

TEST(Translate, CapacityBound) {
    TranslateOptions opts;
    opts.max_states = 2;
    EXPECT_THROW(ltl_to_nba(parse_ltl("[] <> a & [] <> b & (c U d)"), opts), CapacityExceeded);
}

TEST(Translate, Deterministic) {
    for (const auto& f : support::translator_corpus()) EXPECT_EQ(support::nba_of(f), support::nba_of(f)) << f;
}

TEST(NbaValidate, Invariants) {
    Nba n = single_true();
    n.initial.clear();
    EXPECT_THROW(validate(n), FormatError);
    n = single_true();
    n.edges.push_back({0, Guard::truth(), 3});
    EXPECT_THROW(validate(n), FormatError);
    n = single_true();
    n.edges.push_back({0, Guard::atom_ref("zz"), 0});
    EXPECT_THROW(validate(n), FormatError);
}
