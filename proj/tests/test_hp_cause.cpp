#include <doctest.h>

#include "accause/harness.hpp"
#include "accause/hp_cause.hpp"
#include "accause/propositional.hpp"
#include "support.hpp"

using namespace accause;
using testing::f;

namespace {

// Straight from the definition: AC2 holds when some W outside X, frozen at
// its actual values, and some setting x' != x of X make the effect false.
bool oracle_ac2(const CausalModel& m, const Context& u, const std::vector<Event>& cause, const Formula& effect) {
    const Signature& sig = m.signature();
    Assignment actual = m.solve(u);
    std::vector<VarId> rest, xs;
    for (const Event& e : cause) xs.push_back(e.var);
    for (VarId v : sig.endogenous_ids()) {
        if (std::find(xs.begin(), xs.end(), v) == xs.end()) rest.push_back(v);
    }
    for (std::size_t mask = 0; mask < (std::size_t{1} << rest.size()); ++mask) {
        Intervention fixed;
        for (std::size_t i = 0; i < rest.size(); ++i) {
            if (mask >> i & 1) fixed.push_back(Event{rest[i], actual[static_cast<std::size_t>(rest[i])]});
        }
        Assignment xp(sig.size(), 0);
        do {
            bool same = true;
            for (const Event& e : cause) same = same && xp[static_cast<std::size_t>(e.var)] == e.value;
            if (same) continue;
            Intervention iv = fixed;
            for (VarId x : xs) iv.push_back(Event{x, xp[static_cast<std::size_t>(x)]});
            if (!eval_prop(effect, m.solve(u, iv))) return true;
        } while (next_assignment(xp, xs, sig));
    }
    return false;
}

struct OracleVerdict {
    bool ac1, ac2, ac3;
};

OracleVerdict oracle(const CausalModel& m, const Context& u, const std::vector<Event>& cause, const Formula& effect) {
    Assignment actual = m.solve(u);
    OracleVerdict v{eval_prop(effect, actual), false, true};
    for (const Event& e : cause) v.ac1 = v.ac1 && actual[static_cast<std::size_t>(e.var)] == e.value;
    v.ac2 = oracle_ac2(m, u, cause, effect);
    for (std::size_t mask = 1; mask + 1 < (std::size_t{1} << cause.size()); ++mask) {
        std::vector<Event> sub;
        for (std::size_t i = 0; i < cause.size(); ++i) {
            if (mask >> i & 1) sub.push_back(cause[i]);
        }
        if (oracle_ac2(m, u, sub, effect)) v.ac3 = false;
    }
    return v;
}

}  // namespace

TEST_CASE("rock-throwing causes") {
    CausalModel m = testing::model("rock_throwing.cm");
    const Signature& sig = m.signature();
    Context u = parse_context("U=u11", sig);
    Formula bs = f("BS=1", sig);

    CauseVerdict st = is_actual_cause_hp(m, u, testing::evs("ST=1", sig), bs);
    CHECK(st.is_cause);
    REQUIRE_FALSE(st.witnesses.empty());
    CHECK(st.witnesses.front().fixed == testing::evs("BH=0", sig));
    CHECK(st.witnesses.front().xprime == testing::evs("ST=0", sig));

    CauseVerdict bt = is_actual_cause_hp(m, u, testing::evs("BT=1", sig), bs);
    CHECK_FALSE(bt.is_cause);
    CHECK(bt.ac1);
    CHECK_FALSE(bt.ac2);

    CauseVerdict both = is_actual_cause_hp(m, u, testing::evs("ST=1 & BT=1", sig), bs);
    CHECK(both.ac2);
    CHECK_FALSE(both.ac3);
    REQUIRE(both.ac3_violator);
    CHECK(*both.ac3_violator == testing::evs("ST=1", sig));

    CauseVerdict off = is_actual_cause_hp(m, u, testing::evs("ST=0", sig), bs);
    CHECK_FALSE(off.ac1);
    CHECK_FALSE(off.is_cause);

    CauseVerdict first = is_actual_cause_hp(m, u, testing::evs("SH=1", sig), bs, HpOptions{true});
    CHECK(first.is_cause);
    CHECK(first.witnesses.size() == 1);
}

TEST_CASE("malformed causes are rejected") {
    CausalModel m = testing::model("rock_throwing.cm");
    const Signature& sig = m.signature();
    Context u = parse_context("U=u11", sig);
    Formula bs = f("BS=1", sig);
    CHECK_THROWS_AS(is_actual_cause_hp(m, u, {}, bs), SemanticError);
    std::vector<Event> twice{Event{*sig.find("ST"), 1}, Event{*sig.find("ST"), 0}};
    CHECK_THROWS_AS(is_actual_cause_hp(m, u, twice, bs), SemanticError);
    CHECK_THROWS_AS(testing::evs("ST=1 & ST=0", sig), ParseError);
    CHECK_THROWS_AS(is_actual_cause_hp(m, u, testing::evs("U=u11", sig), bs), SemanticError);
}

TEST_CASE("verdicts match the brute-force definition") {
    FuzzCaps caps;
    int causes = 0;
    for (std::size_t i = 0; i < 300; ++i) {
        GeneratedInstance inst = gen_random_model(caps, i);
        const CausalModel& m = inst.model;
        const Signature& sig = m.signature();
        TrialRng rng(17, i);
        std::vector<Event> cause = gen_cause(rng, sig, m.solve(inst.context));
        Formula effect = gen_effect(rng, sig, 3);
        CauseVerdict got = is_actual_cause_hp(m, inst.context, cause, effect);
        OracleVerdict want = oracle(m, inst.context, cause, effect);
        CAPTURE(i);
        CAPTURE(to_string(effect, sig));
        CHECK(got.ac1 == want.ac1);
        CHECK(got.ac2 == want.ac2);
        CHECK(got.ac3 == want.ac3);
        CHECK(got.is_cause == (want.ac1 && want.ac2 && want.ac3));
        causes += got.is_cause;
    }
    CHECK(causes > 10);
}

TEST_CASE("reported witnesses are sound") {
    FuzzCaps caps;
    for (std::size_t i = 0; i < 200; ++i) {
        GeneratedInstance inst = gen_random_model(caps, i);
        const CausalModel& m = inst.model;
        const Signature& sig = m.signature();
        TrialRng rng(23, i);
        std::vector<Event> cause = gen_cause(rng, sig, m.solve(inst.context));
        Formula effect = gen_effect(rng, sig, 3);
        Assignment actual = m.solve(inst.context);
        for (const HpWitness& w : hp_ac2_witnesses(m, inst.context, cause, effect, false)) {
            for (const Event& e : w.fixed) CHECK(actual[static_cast<std::size_t>(e.var)] == e.value);
            Intervention iv = w.fixed;
            iv.insert(iv.end(), w.xprime.begin(), w.xprime.end());
            CHECK_FALSE(eval_prop(effect, m.solve(inst.context, iv)));
            CHECK(w.xprime.size() == cause.size());
        }
    }
}
