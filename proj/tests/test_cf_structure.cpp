#include <doctest.h>

#include <algorithm>

#include "accause/harness.hpp"
#include "accause/propositional.hpp"
#include "support.hpp"

using namespace accause;
using testing::f;

namespace {

Signature small_sig() {
    return Signature({Variable{"U", VarKind::Exogenous, {"0", "1"}}},
                     {Variable{"A", VarKind::Endogenous, {"0", "1"}}, Variable{"B", VarKind::Endogenous, {"0", "1", "2"}}});
}

// Random states and random ranked tiers, each base centered on itself.
CfStructure random_structure(const Signature& sig, std::size_t seed) {
    TrialRng rng(seed, 0, 9);
    std::vector<Assignment> interp;
    std::vector<std::string> names;
    for (const Assignment& a : testing::all_assignments(sig)) {
        if (interp.empty() || rng.chance(2, 3)) {
            names.push_back("s" + std::to_string(interp.size()));
            interp.push_back(a);
        }
    }
    std::size_t n = interp.size();
    std::map<StateId, Tiers> tiers;
    for (StateId s = 0; s < static_cast<StateId>(n); ++s) {
        Tiers t{{s}};
        std::vector<StateId> rest;
        for (StateId x = 0; x < static_cast<StateId>(n); ++x) {
            if (x != s) rest.push_back(x);
        }
        for (std::size_t i = rest.size(); i > 1; --i) std::swap(rest[i - 1], rest[rng.below(i)]);
        for (StateId x : rest) {
            if (t.size() == 1 || rng.chance(1, 2)) t.emplace_back();
            t.back().push_back(x);
        }
        tiers.emplace(s, std::move(t));
    }
    return CfStructure("random", sig, names, interp, std::make_shared<TieredCloseness>(n, std::move(tiers)));
}

std::vector<StateId> brute_closest(const CfStructure& m, StateId s, const Formula& phi) {
    std::vector<StateId> sat, out;
    for (StateId t = 0; t < static_cast<StateId>(m.size()); ++t) {
        if (eval_prop(phi, m.interp(t))) sat.push_back(t);
    }
    for (StateId t : sat) {
        bool minimal = true;
        for (StateId u : sat) {
            if (m.order().at_least_as_close(s, u, t) && !m.order().at_least_as_close(s, t, u)) minimal = false;
        }
        if (minimal) out.push_back(t);
    }
    return out;
}

}  // namespace

TEST_CASE("bomb structures") {
    CfStructure ig = testing::structure("bomb_ignorant.cfs");
    CfStructure kn = testing::structure("bomb_knowing.cfs");
    CHECK_FALSE(validate_structure(ig));
    CHECK_FALSE(validate_structure(kn));
    const Signature& sig = ig.signature();
    StateId ran = *ig.find_state("ran");
    CHECK(closest_states(ig, ran, f("Run=0", sig)) == std::vector<StateId>{*ig.find_state("stays_wrong")});
    CHECK(closest_states(kn, *kn.find_state("ran"), f("Run=0", sig)) ==
          std::vector<StateId>{*kn.find_state("stays_right")});
    CHECK(eval_cf(ig, ran, f("(Run=0) ~> (Explode=1)", sig)));
    CHECK_FALSE(eval_cf(kn, *kn.find_state("ran"), f("(Run=0) ~> (Explode=1)", sig)));
    CHECK(eval_cf(ig, ran, f("Run=1 & Explode=1", sig)));
    CHECK(eval_cf(ig, ran, f("(Run=0 & Run=1) ~> (Explode=0)", sig)));
    CHECK_THROWS_AS(eval_cf(ig, ran, f("[Run<-0]Explode=1", sig)), SemanticError);
}

TEST_CASE("validator reports a centering violation") {
    Signature sig = small_sig();
    std::vector<Assignment> interp{{0, 0, 0}, {0, 1, 0}};
    std::map<StateId, Tiers> tiers{{0, Tiers{{1}, {0}}}};
    CfStructure m("bad", sig, {"a", "b"}, interp, std::make_shared<TieredCloseness>(2, tiers));
    auto v = validate_structure(m);
    REQUIRE(v);
    CHECK(v->kind == StructureViolation::Kind::Centering);
    CHECK(v->base == 0);
}

TEST_CASE("structure files round-trip") {
    CfStructure ig = testing::structure("bomb_ignorant.cfs");
    CfStructure back = parse_structure(write_structure(ig, ""));
    REQUIRE(back.size() == ig.size());
    for (StateId s = 0; s < static_cast<StateId>(ig.size()); ++s) {
        CHECK(back.state_name(s) == ig.state_name(s));
        CHECK(back.interp(s) == ig.interp(s));
        CHECK(back.order().tiers(s) == ig.order().tiers(s));
    }
    CHECK_THROWS_AS(parse_structure("structure x\nvar A : {0, 1}\nstate a { A=2 }\n"), ParseError);
    CHECK_THROWS_AS(parse_structure("structure x\nvar A : {0, 1}\nstate a { A=1 }\norder b : {a}\n"), ParseError);
    CHECK_THROWS_AS(parse_structure("structure x\nvar A : {0, 1}\nstate a { A=1 }\norder derived weighted-violations\n"),
                    ParseError);
}

TEST_CASE("closest states match the minimal-element definition") {
    Signature sig = small_sig();
    for (std::size_t seed = 0; seed < 40; ++seed) {
        CfStructure m = random_structure(sig, seed);
        REQUIRE_FALSE(validate_structure(m));
        TrialRng rng(seed, 1);
        for (int k = 0; k < 10; ++k) {
            Formula phi = gen_effect(rng, sig, 2);
            for (StateId s = 0; s < static_cast<StateId>(m.size()); ++s) {
                auto got = closest_states(m, s, phi);
                std::sort(got.begin(), got.end());
                CHECK(got == brute_closest(m, s, phi));
            }
        }
    }
}

TEST_CASE("comparator orders evaluate without tiers") {
    Signature sig = small_sig();
    std::vector<Assignment> interp{{0, 0, 0}, {0, 1, 0}, {0, 1, 1}};
    auto dist = [interp](StateId a, StateId b) {
        int d = 0;
        for (std::size_t i = 0; i < interp[0].size(); ++i) d += interp[a][i] != interp[b][i];
        return d;
    };
    auto order = std::make_shared<ComparatorCloseness>([dist](StateId s, StateId t, StateId u) {
        return dist(s, t) <= dist(s, u);
    });
    CfStructure m("cmp", sig, {"a", "b", "c"}, interp, order);
    CHECK(closest_states(m, 0, f("A=1", sig)) == std::vector<StateId>{1});
    CHECK(eval_cf(m, 0, f("(A=1) ~> (B=0)", sig)));
}

TEST_CASE("counterfactual consequents are closed under conjunction") {
    Signature sig = small_sig();
    for (std::size_t seed = 0; seed < 40; ++seed) {
        CfStructure m = random_structure(sig, seed);
        CfEvaluator ev(m);
        TrialRng rng(seed, 2);
        for (int k = 0; k < 15; ++k) {
            Formula phi = gen_effect(rng, sig, 2);
            Formula a = gen_effect(rng, sig, 2);
            Formula b = gen_effect(rng, sig, 2);
            for (StateId s = 0; s < static_cast<StateId>(m.size()); ++s) {
                bool both = ev.eval(s, Formula::counterfactual(phi, a)) && ev.eval(s, Formula::counterfactual(phi, b));
                CHECK(both == ev.eval(s, Formula::counterfactual(phi, Formula::conj({a, b}))));
            }
        }
    }
}

TEST_CASE("no state satisfies two incompatible counterfactuals with a satisfiable antecedent") {
    CausalModel m = testing::model("copy_chain.cm");
    const Signature& sig = m.signature();
    Formula both = f("(X!=0) ~> (Y=1) & (X!=0) ~> (Y=2)", sig);
    for (std::size_t seed = 0; seed < 20; ++seed) {
        CfStructure s = random_structure(sig, seed);
        CfEvaluator ev(s);
        if (!ev.any_state(f("X!=0", sig))) continue;
        for (StateId t = 0; t < static_cast<StateId>(s.size()); ++t) CHECK_FALSE(ev.eval(t, both));
    }
}
