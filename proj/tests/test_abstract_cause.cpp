#include <doctest.h>

#include "accause/abstract_cause.hpp"
#include "accause/correspondence.hpp"
#include "accause/harness.hpp"
#include "accause/propositional.hpp"
#include "support.hpp"

using namespace accause;
using testing::f;

namespace {

// AC2' over conjunctions of actual-valued endogenous events, evaluating
// (!cause & tau) ~> !effect by trying every value vector for the antecedent's
// variables.
bool oracle_ac2(const CausalModel& m, const Context& u, const std::vector<Event>& cause, const Formula& effect) {
    const Signature& sig = m.signature();
    Assignment actual = m.solve(u);
    std::vector<VarId> endo = sig.endogenous_ids();
    Formula not_cause = Formula::negate(Formula::conj(cause));
    for (std::size_t mask = 0; mask < (std::size_t{1} << endo.size()); ++mask) {
        std::vector<Event> tau;
        std::set<VarId> ys;
        for (const Event& e : cause) ys.insert(e.var);
        for (std::size_t i = 0; i < endo.size(); ++i) {
            if (mask >> i & 1) {
                tau.push_back(Event{endo[i], actual[static_cast<std::size_t>(endo[i])]});
                ys.insert(endo[i]);
            }
        }
        Formula ante = Formula::conj({not_cause, Formula::conj(tau)});
        std::vector<VarId> yv(ys.begin(), ys.end());
        Assignment y = actual;
        for (VarId v : yv) y[static_cast<std::size_t>(v)] = 0;
        do {
            if (!eval_prop(ante, y)) continue;
            Intervention iv;
            for (VarId v : yv) iv.push_back(Event{v, y[static_cast<std::size_t>(v)]});
            if (!eval_prop(effect, m.solve(u, iv))) return true;
        } while (next_assignment(y, yv, sig));
    }
    return false;
}

bool oracle_cause(const CausalModel& m, const Context& u, const std::vector<Event>& cause, const Formula& effect) {
    Assignment actual = m.solve(u);
    if (!eval_prop(Formula::conj({Formula::conj(cause), effect}), actual)) return false;
    if (!oracle_ac2(m, u, cause, effect)) return false;
    for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << cause.size()); ++mask) {
        std::vector<Event> sub;
        for (std::size_t i = 0; i < cause.size(); ++i) {
            if (mask >> i & 1) sub.push_back(cause[i]);
        }
        if (oracle_ac2(m, u, sub, effect)) return false;
    }
    return true;
}

struct RockThrowing {
    CausalModel m = testing::model("rock_throwing.cm");
    const Signature& sig = m.signature();
    Context u = parse_context("U=u11", sig);
};

}  // namespace

TEST_CASE("witness enumeration in the rock-throwing setting") {
    RockThrowing rt;
    CausalSetting set(rt.m, rt.u);
    Formula st = f("ST=1", rt.sig);
    auto conj = enumerate_witnesses(WitnessLanguage::conj_only(), set, st);
    CHECK(conj.size() == 32);
    bool has_true = false, has_bh = false;
    for (const Formula& t : conj) {
        CHECK(set.holds(t));
        has_true = has_true || t.is_true();
        has_bh = has_bh || t == f("BH=0", rt.sig);
    }
    CHECK(has_true);
    CHECK(has_bh);

    auto pair = enumerate_witnesses(WitnessLanguage::pair(), set, st);
    for (const Formula& t : pair) CHECK(set.holds(t));
    for (const Formula& t : conj) {
        Formula extended = Formula::conj({t, f("ST=1 | ST=0", rt.sig)});
        bool found = false;
        for (const Formula& p : pair) found = found || prop_equivalent(p, extended, rt.sig);
        CHECK(found);
    }

    WitnessLanguage pinned = WitnessLanguage::conj_only();
    pinned.pins = testing::evs("U=u11", rt.sig);
    auto pins = enumerate_witnesses(pinned, set, st);
    CHECK_FALSE(pins.empty());
    for (const Formula& t : pins) CHECK(prop_entails(t, f("U=u11", rt.sig), rt.sig));

    CHECK_THROWS_AS(enumerate_witnesses(WitnessLanguage::pair(), set, f("ST=1 | BT=1", rt.sig)), SemanticError);
}

TEST_CASE("pair witness on the counterpart structure") {
    RockThrowing rt;
    Counterpart cp = build_counterpart(rt.m);
    StructureSetting set(cp.structure, cp.context_state[rt.m.context_index(rt.u)]);
    AbstractVerdict v = is_actual_cause_abstract(set, f("ST=1", rt.sig), f("BS=1", rt.sig), WitnessLanguage::pair());
    CHECK(v.is_cause);
    REQUIRE(v.tau);
    CHECK(to_string(*v.tau, rt.sig) == "BH=0 & (ST=1 | ST=0)");

    StructureSetting set2(cp.structure, cp.context_state[rt.m.context_index(rt.u)]);
    AbstractVerdict bt = is_actual_cause_abstract(set2, f("BT=1", rt.sig), f("BS=1", rt.sig), WitnessLanguage::pair());
    CHECK_FALSE(bt.is_cause);
}

TEST_CASE("backtracking cause and its removal by pinning") {
    CfStructure ex4 = load_structure(testing::data_path("example4.cfs"));
    const Signature& sig = ex4.signature();
    StateId s = *ex4.find_state("s125");
    StructureSetting set(ex4, s);
    AbstractVerdict v = is_actual_cause_abstract(set, f("BT=1", sig), f("BS=1", sig), WitnessLanguage::conj_only());
    CHECK(v.is_cause);
    REQUIRE(v.tau);
    CHECK(v.tau->is_true());

    WitnessLanguage pinned = WitnessLanguage::conj_only();
    pinned.pins = testing::evs("U=u11", sig);
    StructureSetting set2(ex4, s);
    AbstractVerdict p = is_actual_cause_abstract(set2, f("BT=1", sig), f("BS=1", sig), pinned);
    CHECK_FALSE(p.is_cause);
    CHECK_FALSE(p.ac2);
}

TEST_CASE("verdicts on causal settings match the brute-force definition") {
    FuzzCaps caps;
    int causes = 0;
    for (std::size_t i = 0; i < 300; ++i) {
        GeneratedInstance inst = gen_random_model(caps, i);
        const Signature& sig = inst.model.signature();
        TrialRng rng(29, i);
        std::vector<Event> cause = gen_cause(rng, sig, inst.model.solve(inst.context));
        Formula effect = gen_effect(rng, sig, 3);
        CausalSetting set(inst.model, inst.context);
        AbstractVerdict v = is_actual_cause_abstract(set, Formula::conj(cause), effect, WitnessLanguage::conj_only());
        CAPTURE(i);
        CAPTURE(to_string(effect, sig));
        CHECK(v.is_cause == oracle_cause(inst.model, inst.context, cause, effect));
        causes += v.is_cause;
        if (v.tau) {
            CHECK(set.holds(*v.tau));
            CHECK(set.holds(Formula::counterfactual(Formula::conj({Formula::negate(Formula::conj(cause)), *v.tau}),
                                                    Formula::negate(effect))));
        }
    }
    CHECK(causes > 10);
}

TEST_CASE("enlarging the language preserves AC2'") {
    FuzzCaps caps;
    caps.max_endogenous = 3;
    for (std::size_t i = 0; i < 100; ++i) {
        GeneratedInstance inst = gen_random_model(caps, i);
        const Signature& sig = inst.model.signature();
        TrialRng rng(31, i);
        Formula cause = Formula::conj(gen_cause(rng, sig, inst.model.solve(inst.context)));
        Formula effect = gen_effect(rng, sig, 2);
        CausalSetting set(inst.model, inst.context);
        AbstractCauseChecker conj(set, effect, WitnessLanguage::conj_only());
        AbstractCauseChecker neg(set, effect, WitnessLanguage::conj_neg());
        AbstractCauseChecker gen(set, effect, WitnessLanguage::general(1));
        if (conj.ac2_witness(cause)) {
            CHECK(neg.ac2_witness(cause));
            CHECK(gen.ac2_witness(cause));
        }

        Counterpart cp = build_counterpart(inst.model);
        StructureSetting ss(cp.structure, cp.context_state[inst.model.context_index(inst.context)]);
        AbstractCauseChecker sconj(ss, effect, WitnessLanguage::conj_only());
        AbstractCauseChecker spair(ss, effect, WitnessLanguage::pair());
        if (sconj.ac2_witness(cause)) CHECK(spair.ac2_witness(cause));
    }
}

TEST_CASE("vacuous antecedents") {
    CfStructure m = parse_structure(R"(structure tiny
var A : {0, 1}
var B : {0, 1}
state s0 { A=1, B=1 }
state s1 { A=1, B=0 }
order s0 : {s1}
order s1 : {s0}
)");
    const Signature& sig = m.signature();
    StructureSetting strict(m, 0);
    AbstractVerdict v = is_actual_cause_abstract(strict, f("A=1", sig), f("B=1", sig), WitnessLanguage::conj_only());
    CHECK(v.ac1);
    CHECK_FALSE(v.ac2);

    StructureSetting lax(m, 0);
    AbstractOptions opts;
    opts.allow_vacuous = true;
    AbstractVerdict w = is_actual_cause_abstract(lax, f("A=1", sig), f("B=1", sig), WitnessLanguage::conj_only(), opts);
    CHECK(w.ac2);
    CHECK_FALSE(w.ac3);
    REQUIRE(w.ac3_violator);
    CHECK(w.ac3_violator->is_true());
}

TEST_CASE("witness extraction from HP certificates") {
    RockThrowing rt;
    HpWitness w{testing::evs("BH=0", rt.sig), testing::evs("ST=0", rt.sig)};
    CHECK(to_string(extract_abstract_witness(w, testing::evs("ST=1", rt.sig)), rt.sig) == "BH=0 & (ST=1 | ST=0)");
    HpWitness butfor{{}, testing::evs("SH=0", rt.sig)};
    CHECK(to_string(extract_abstract_witness(butfor, testing::evs("SH=1", rt.sig)), rt.sig) == "SH=1 | SH=0");
}

TEST_CASE("extracted witnesses pass AC2' on the counterpart") {
    FuzzCaps caps;
    int checked = 0;
    for (std::size_t i = 0; checked < 200 && i < 2000; ++i) {
        GeneratedInstance inst = gen_random_model(caps, i);
        const CausalModel& m = inst.model;
        const Signature& sig = m.signature();
        TrialRng rng(37, i);
        std::vector<Event> cause = gen_cause(rng, sig, m.solve(inst.context));
        Formula effect = gen_effect(rng, sig, 3);
        CauseVerdict hp = is_actual_cause_hp(m, inst.context, cause, effect, HpOptions{true});
        if (!hp.ac1 || !hp.ac2) continue;
        Counterpart cp = build_counterpart(m);
        StructureSetting set(cp.structure, cp.context_state[m.context_index(inst.context)]);
        Formula tau = extract_abstract_witness(hp.witnesses.front(), cause);
        CAPTURE(to_string(tau, sig));
        CHECK(set.holds(tau));
        CHECK(set.holds(Formula::counterfactual(Formula::conj({Formula::negate(Formula::conj(cause)), tau}),
                                                Formula::negate(effect))));
        ++checked;
    }
    CHECK(checked == 200);
}

TEST_CASE("unrestricted disjunction makes every true event pass AC2'") {
    CausalModel m = testing::model("degenerate.cm");
    const Signature& sig = m.signature();
    Context u = parse_context("U1=1, U2=1", sig);
    Formula effect = f("C=1", sig);
    Assignment actual = m.solve(u);
    for (VarId v : sig.endogenous_ids()) {
        Formula cand = Formula::event(v, actual[static_cast<std::size_t>(v)]);
        CausalSetting set(m, u);
        AbstractCauseChecker c(set, effect, WitnessLanguage::general(1));
        auto tau = c.ac2_witness(cand);
        CAPTURE(to_string(cand, sig));
        REQUIRE(tau);
        CHECK(set.holds(*tau));
    }
    CHECK_FALSE(is_actual_cause_hp(m, u, testing::evs("B=1", sig), effect).is_cause);
}

TEST_CASE("language and scope parsing") {
    CHECK(parse_language("conj").mode == DisjunctionMode::None);
    CHECK(parse_language("conj-neg").allow_negated);
    CHECK(parse_language("pair").mode == DisjunctionMode::PairOnCause);
    CHECK(parse_language("gen:3").general_k == 3);
    CHECK_THROWS_AS(parse_language("gen:0"), ParseError);
    CHECK_THROWS_AS(parse_language("nope"), ParseError);
    CHECK(parse_minimality_scope("language") == MinimalityScope::Language);
    CHECK(to_string(parse_minimality_scope("conj")) == "conj");
    CHECK_THROWS_AS(parse_minimality_scope("all"), ParseError);
}
