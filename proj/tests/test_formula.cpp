#include <doctest.h>

#include "accause/harness.hpp"
#include "accause/propositional.hpp"
#include "support.hpp"

using namespace accause;
using testing::f;

namespace {

Signature rt_sig() { return testing::model("rock_throwing.cm").signature(); }

bool brute_entails(const Formula& a, const Formula& b, const Signature& sig) {
    for (const Assignment& x : testing::all_assignments(sig)) {
        if (eval_prop(a, x) && !eval_prop(b, x)) return false;
    }
    return true;
}

bool brute_consistent(const Formula& a, const Signature& sig) {
    for (const Assignment& x : testing::all_assignments(sig)) {
        if (eval_prop(a, x)) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("parser accepts the documented syntax") {
    Signature sig = rt_sig();
    Formula g = f("ST=1 & !(BT=0 | BH=1)", sig);
    CHECK(g.kind() == FormulaKind::And);
    CHECK(g.children().size() == 2);
    CHECK(g.child(1).kind() == FormulaKind::Not);

    Formula neq = f("BT!=0", sig);
    CHECK(neq == Formula::negate(Formula::event(*sig.find("BT"), 0)));

    Formula iv = f("[ST<-0, BT<-1]BS=1", sig);
    REQUIRE(iv.kind() == FormulaKind::Intervene);
    CHECK(iv.assignments().size() == 2);

    Formula cf = f("(ST=0 & BT=0) ~> (BS=0)", sig);
    REQUIRE(cf.kind() == FormulaKind::Counterfactual);
    CHECK(as_event_conjunction(cf.child(0))->size() == 2);

    CHECK(f("true", sig).is_true());
    CHECK(f("false", sig).is_false());
    CHECK(f("U=u11", sig).as_event().var == 0);
}

TEST_CASE("parser reports positions of errors") {
    Signature sig = rt_sig();
    try {
        f("ST=1 & XX=0", sig);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
        CHECK(e.column() == 8);
    }
    CHECK_THROWS_AS(f("ST=7", sig), ParseError);
    CHECK_THROWS_AS(f("ST=1 &", sig), ParseError);
    CHECK_THROWS_AS(f("[U<-u00]BS=1", sig), ParseError);
    CHECK_THROWS_AS(f("[ST<-0, ST<-1]BS=1", sig), ParseError);
    CHECK_THROWS_AS(f("(ST=1) ~> BS=1", sig), ParseError);
}

TEST_CASE("printing round-trips on generated formulas") {
    FuzzCaps caps;
    for (std::size_t i = 0; i < 60; ++i) {
        GeneratedInstance inst = gen_random_model(caps, i);
        const Signature& sig = inst.model.signature();
        TrialRng rng(11, i);
        for (int k = 0; k < 20; ++k) {
            Formula g = k % 2 ? gen_ls_formula(rng, sig, 3) : gen_effect(rng, sig, 3);
            std::string text = to_string(g, sig);
            CAPTURE(text);
            CHECK(parse_formula(text, sig) == g);
            Formula c = intervention_as_counterfactual(g);
            CHECK(parse_formula(to_string(c, sig), sig) == c);
        }
    }
}

TEST_CASE("fragment predicates") {
    Signature sig = rt_sig();
    CHECK(is_propositional(f("ST=1 | !BH=0", sig)));
    CHECK_FALSE(is_propositional(f("[ST<-0]BS=1", sig)));
    CHECK(contains_intervention(f("ST=1 & [ST<-0]BS=1", sig)));
    CHECK(contains_counterfactual(f("!((ST=0) ~> (BS=0))", sig)));
    CHECK_FALSE(as_event_conjunction(f("ST=1 | BT=1", sig)));
    CHECK(as_event_conjunction(f("true", sig))->empty());
}

TEST_CASE("free endogenous variables") {
    Signature sig = rt_sig();
    auto fe = free_endogenous(f("U=u11 & (ST=1 | !BH=0)", sig), sig);
    CHECK(fe == std::set<VarId>{*sig.find("ST"), *sig.find("BH")});
    CHECK(free_endogenous(f("U=u00", sig), sig).empty());
    CHECK(mentioned_vars(f("U=u00 & BS=1", sig)).size() == 2);
}

TEST_CASE("propositional reasoning matches truth-table enumeration") {
    FuzzCaps caps;
    caps.max_endogenous = 3;
    for (std::size_t i = 0; i < 40; ++i) {
        GeneratedInstance inst = gen_random_model(caps, i);
        const Signature& sig = inst.model.signature();
        TrialRng rng(5, i);
        for (int k = 0; k < 15; ++k) {
            Formula a = gen_effect(rng, sig, 2);
            Formula b = gen_effect(rng, sig, 2);
            CAPTURE(to_string(a, sig));
            CAPTURE(to_string(b, sig));
            CHECK(prop_entails(a, b, sig) == brute_entails(a, b, sig));
            CHECK(prop_consistent(a, sig) == brute_consistent(a, sig));
            CHECK(prop_valid(a, sig) == !brute_consistent(Formula::negate(a), sig));
            CHECK(prop_equivalent(a, b, sig) == (brute_entails(a, b, sig) && brute_entails(b, a, sig)));
        }
    }
}

TEST_CASE("propositional examples") {
    Signature sig = rt_sig();
    CHECK(prop_entails(f("ST=1 & BT=1", sig), f("ST=1", sig), sig));
    CHECK_FALSE(prop_entails(f("ST=1", sig), f("ST=1 & BT=1", sig), sig));
    CHECK(prop_valid(f("ST=0 | ST=1", sig), sig));
    CHECK_FALSE(prop_consistent(f("ST=0 & ST=1", sig), sig));
    CHECK(prop_equivalent(f("ST!=0", sig), f("ST=1", sig), sig));
    CHECK_THROWS_AS(eval_prop(f("[ST<-0]BS=1", sig), Assignment(sig.size(), 0)), SemanticError);
}
