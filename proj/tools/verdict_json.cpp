#include "verdict_json.hpp"

namespace accause::cli {

namespace {

Json optional_formula(const std::optional<Formula>& f, const Signature& sig) {
    return f ? Json(to_string(*f, sig)) : Json(nullptr);
}

}  // namespace

Json events_json(const std::vector<Event>& evs, const Signature& sig) {
    Json out = Json::object();
    for (const Event& e : evs) out[sig.name(e.var)] = sig.value_name(e.var, e.value);
    return out;
}

Json assignment_json(const Assignment& a, const Signature& sig, const std::vector<VarId>& vars) {
    Json out = Json::object();
    for (VarId v : vars) out[sig.name(v)] = sig.value_name(v, a[static_cast<std::size_t>(v)]);
    return out;
}

Json to_json(const CauseVerdict& v, const Signature& sig) {
    Json w = Json::array();
    for (const HpWitness& h : v.witnesses) {
        Json names = Json::array();
        for (const Event& e : h.fixed) names.push_back(sig.name(e.var));
        w.push_back({{"W", names}, {"wStar", events_json(h.fixed, sig)}, {"xPrime", events_json(h.xprime, sig)}});
    }
    return {{"kind", "hp"},
            {"isCause", v.is_cause},
            {"ac1", v.ac1},
            {"ac2", v.ac2},
            {"ac3", v.ac3},
            {"witnesses", w},
            {"ac3Violator", v.ac3_violator ? events_json(*v.ac3_violator, sig) : Json(nullptr)}};
}

Json to_json(const AbstractVerdict& v, const Signature& sig) {
    return {{"kind", "abstract"},
            {"isCause", v.is_cause},
            {"ac1", v.ac1},
            {"ac2", v.ac2},
            {"ac3", v.ac3},
            {"tau", optional_formula(v.tau, sig)},
            {"ac3Violator", optional_formula(v.ac3_violator, sig)},
            {"witnessesTried", v.witnesses_tried}};
}

Json to_json(const ExplanationVerdict& v, const Signature& sig) {
    Json certs = Json::array();
    for (const Ex1aCertificate& c : v.certificates) {
        Json j{{"member", c.member}, {"applicable", c.applicable}, {"satisfied", c.satisfied}};
        if (c.conjunct) {
            j["conjunct"] = events_json({*c.conjunct}, sig);
            j["augmentation"] = events_json(c.augmentation, sig);
        }
        if (c.tau1) j["tau1"] = to_string(*c.tau1, sig);
        if (c.tau2) j["tau2"] = to_string(*c.tau2, sig);
        certs.push_back(std::move(j));
    }
    return {{"kind", "explanation"},
            {"isExplanation", v.is_explanation},
            {"nontrivial", v.nontrivial},
            {"ex1a", v.ex1a},
            {"ex1b", v.ex1b},
            {"ex2", v.ex2},
            {"ex3", v.ex3},
            {"ex4", v.ex4},
            {"certificates", certs},
            {"ex1bFailure", v.ex1b_failure ? Json(*v.ex1b_failure) : Json(nullptr)},
            {"ex2Violator", optional_formula(v.ex2_violator, sig)},
            {"ex2Candidates", v.ex2_candidates}};
}

Json to_json(const CorrespondenceReport& r, const CfStructure& m2) {
    const Signature& sig = m2.signature();
    Json j{{"kind", "correspondence"},
           {"strong", r.strong},
           {"strict", r.strict},
           {"corresponds", r.corresponds()},
           {"stronglyCorresponds", r.strongly_corresponds()},
           {"conditionA", r.condition_a},
           {"conditionB", r.condition_b},
           {"conditionC", r.condition_c},
           {"checkedPsi", r.checked_psi_count},
           {"pairsSkipped", r.pairs_skipped}};
    if (r.a_failure) {
        std::vector<VarId> others;
        for (VarId v = 0; v < static_cast<VarId>(sig.size()); ++v) {
            if (v != r.a_failure->y) others.push_back(v);
        }
        j["aFailure"] = {{"variable", sig.name(r.a_failure->y)},
                         {"setting", assignment_json(r.a_failure->setting, sig, others)},
                         {"base", m2.state_name(r.a_failure->base)},
                         {"offending", m2.state_name(r.a_failure->offending)}};
    }
    if (r.b_missing) {
        std::vector<VarId> all;
        for (VarId v = 0; v < static_cast<VarId>(sig.size()); ++v) all.push_back(v);
        j["bMissing"] = assignment_json(*r.b_missing, sig, all);
    }
    if (r.c_failure) {
        j["cFailure"] = {{"base", m2.state_name(r.c_failure->base)},
                         {"psi", to_string(r.c_failure->psi, sig)},
                         {"offending", m2.state_name(r.c_failure->offending)}};
    }
    return j;
}

}  // namespace accause::cli
