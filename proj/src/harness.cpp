#include "accause/harness.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "accause/abstract_cause.hpp"
#include "accause/correspondence.hpp"
#include "accause/explanation.hpp"
#include "accause/hp_cause.hpp"
#include "accause/parser.hpp"
#include "accause/propositional.hpp"

namespace accause {

void FuzzCaps::validate() const {
    if (max_endogenous < 1 || max_exogenous < 1 || max_domain < 2 || formula_depth < 0 || max_k < 1 ||
        formulas_per_model < 1 || state_cap < 1) {
        throw SemanticError("fuzz caps must be positive (domains at least 2)");
    }
}

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t index, std::uint64_t stream)
    : gen_(splitmix(splitmix(splitmix(seed) ^ index) ^ (stream * 0x632be59bd9b4e019ULL))) {}

namespace {

std::vector<std::string> value_names(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(i));
    return out;
}

GeneratedInstance gen_model(TrialRng& rng, const std::string& name, int n_exo, int n_endo,
                            const std::function<std::size_t()>& domain, int max_parents) {
    std::vector<Variable> exo, endo;
    for (int i = 0; i < n_exo; ++i) exo.push_back(Variable{"U" + std::to_string(i), VarKind::Exogenous, value_names(domain())});
    for (int i = 0; i < n_endo; ++i) endo.push_back(Variable{"V" + std::to_string(i), VarKind::Endogenous, value_names(domain())});
    Signature sig(exo, endo);

    std::vector<Equation> eqs;
    for (int i = 0; i < n_endo; ++i) {
        VarId self = static_cast<VarId>(n_exo + i);
        std::vector<VarId> pool;
        for (VarId v = 0; v < self; ++v) pool.push_back(v);
        std::vector<VarId> parents;
        for (VarId v : pool) {
            if (static_cast<int>(parents.size()) < max_parents && rng.chance(1, 2)) parents.push_back(v);
        }
        if (parents.empty()) parents.push_back(pool[rng.below(pool.size())]);

        const std::size_t range = sig.range_size(self);
        std::vector<std::pair<Assignment, ValueId>> table;
        std::vector<std::size_t> counts(range, 0);
        Assignment a(sig.size(), 0);
        do {
            ValueId out = static_cast<ValueId>(rng.below(range));
            ++counts[static_cast<std::size_t>(out)];
            table.emplace_back(a, out);
        } while (next_assignment(a, parents, sig));
        ValueId fallback = static_cast<ValueId>(std::max_element(counts.begin(), counts.end()) - counts.begin());
        Equation eq;
        eq.fallback = fallback;
        for (const auto& [row, out] : table) {
            if (out == fallback) continue;
            std::vector<Event> guard;
            for (VarId p : parents) guard.push_back(Event{p, row[static_cast<std::size_t>(p)]});
            eq.rows.push_back(EquationRow{Formula::conj(guard), out});
        }
        eqs.push_back(std::move(eq));
    }
    CausalModel m(name, sig, std::move(eqs));
    Context u;
    for (VarId x : sig.exogenous_ids()) u.push_back(static_cast<ValueId>(rng.below(sig.range_size(x))));
    return GeneratedInstance{std::move(m), std::move(u)};
}

}  // namespace

GeneratedInstance gen_random_model(const FuzzCaps& caps, std::size_t index) {
    caps.validate();
    TrialRng rng(caps.seed, index, 0);
    int n_exo = 1 + static_cast<int>(rng.below(static_cast<std::size_t>(caps.max_exogenous)));
    int n_endo = caps.max_endogenous >= 2 ? 2 + static_cast<int>(rng.below(static_cast<std::size_t>(caps.max_endogenous - 1)))
                                          : 1;
    auto domain = [&]() { return 2 + rng.below(static_cast<std::size_t>(caps.max_domain - 1)); };
    return gen_model(rng, "fuzz" + std::to_string(index), n_exo, n_endo, domain, 3);
}

GeneratedInstance gen_binary_model(std::uint64_t seed, int endogenous) {
    TrialRng rng(seed, 0, 7);
    return gen_model(rng, "binary" + std::to_string(endogenous), 2, endogenous, [] { return std::size_t{2}; }, 3);
}

Formula gen_effect(TrialRng& rng, const Signature& sig, int depth) {
    auto endo = sig.endogenous_ids();
    if (depth <= 0 || rng.chance(1, 3)) {
        VarId v = endo[rng.below(endo.size())];
        Formula e = Formula::event(v, static_cast<ValueId>(rng.below(sig.range_size(v))));
        return rng.chance(1, 4) ? Formula::negate(e) : e;
    }
    switch (rng.below(3)) {
        case 0: return Formula::negate(gen_effect(rng, sig, depth - 1));
        case 1: return Formula::conj({gen_effect(rng, sig, depth - 1), gen_effect(rng, sig, depth - 1)});
        default: return Formula::disj({gen_effect(rng, sig, depth - 1), gen_effect(rng, sig, depth - 1)});
    }
}

std::vector<Event> gen_cause(TrialRng& rng, const Signature& sig, const Assignment& actual) {
    auto endo = sig.endogenous_ids();
    std::size_t k = endo.size() >= 2 && rng.chance(1, 3) ? 2 : 1;
    std::vector<Event> out;
    while (out.size() < k) {
        VarId v = endo[rng.below(endo.size())];
        if (std::any_of(out.begin(), out.end(), [&](const Event& e) { return e.var == v; })) continue;
        ValueId x = actual[static_cast<std::size_t>(v)];
        if (rng.chance(1, 5)) x = static_cast<ValueId>((x + 1 + rng.below(sig.range_size(v) - 1)) % sig.range_size(v));
        out.push_back(Event{v, x});
    }
    std::sort(out.begin(), out.end());
    return out;
}

Formula gen_ls_formula(TrialRng& rng, const Signature& sig, int depth) {
    if (depth <= 0 || rng.chance(1, 3)) {
        if (!rng.chance(1, 2)) return gen_effect(rng, sig, 0);
        auto endo = sig.endogenous_ids();
        std::size_t k = endo.size() >= 2 && rng.chance(1, 3) ? 2 : 1;
        Intervention asg;
        while (asg.size() < k) {
            VarId v = endo[rng.below(endo.size())];
            if (std::any_of(asg.begin(), asg.end(), [&](const Event& e) { return e.var == v; })) continue;
            asg.push_back(Event{v, static_cast<ValueId>(rng.below(sig.range_size(v)))});
        }
        std::sort(asg.begin(), asg.end());
        return Formula::intervene(asg, gen_effect(rng, sig, std::max(0, depth - 1)));
    }
    switch (rng.below(3)) {
        case 0: return Formula::negate(gen_ls_formula(rng, sig, depth - 1));
        case 1: return Formula::conj({gen_ls_formula(rng, sig, depth - 1), gen_ls_formula(rng, sig, depth - 1)});
        default: return Formula::disj({gen_ls_formula(rng, sig, depth - 1), gen_ls_formula(rng, sig, depth - 1)});
    }
}

Formula intervention_as_counterfactual(const Formula& f) {
    switch (f.kind()) {
        case FormulaKind::Event: return f;
        case FormulaKind::Not: return Formula::negate(intervention_as_counterfactual(f.child(0)));
        case FormulaKind::And:
        case FormulaKind::Or: {
            std::vector<Formula> parts;
            for (const Formula& c : f.children()) parts.push_back(intervention_as_counterfactual(c));
            return f.kind() == FormulaKind::And ? Formula::conj(std::move(parts)) : Formula::disj(std::move(parts));
        }
        case FormulaKind::Intervene:
            return Formula::counterfactual(Formula::conj(f.assignments()),
                                           intervention_as_counterfactual(f.child(0)));
        case FormulaKind::Counterfactual:
            return Formula::counterfactual(intervention_as_counterfactual(f.child(0)),
                                           intervention_as_counterfactual(f.child(1)));
    }
    return f;
}

namespace {

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::vector<std::size_t> sample_k(TrialRng& rng, std::size_t contexts, int max_k) {
    std::size_t k = 1 + rng.below(std::min<std::size_t>(contexts, static_cast<std::size_t>(max_k)));
    std::set<std::size_t> picked;
    while (picked.size() < k) picked.insert(rng.below(contexts));
    return {picked.begin(), picked.end()};
}

std::string explanation_summary(const ExplanationVerdict& v) {
    return "explanation=" + yes_no(v.is_explanation) + " nontrivial=" + yes_no(v.nontrivial);
}

}  // namespace

DifferentialReport run_differential(Suite suite, const FuzzCaps& caps) {
    caps.validate();
    auto start = std::chrono::steady_clock::now();
    DifferentialReport rep;
    rep.suite = suite;
    rep.caps = caps;

    for (std::size_t i = 0; i < caps.trials; ++i) {
        ++rep.trials;
        GeneratedInstance inst = gen_random_model(caps, i);
        const CausalModel& m = inst.model;
        const Signature& sig = m.signature();
        const Context& u = inst.context;
        TrialRng rng(caps.seed, i, 1);
        const Assignment actual = m.solve(u);
        const std::string ctx = context_to_string(u, sig);
        const std::string model_file = "trial-" + std::to_string(i) + ".cm";

        auto record = [&](bool agree, std::string query, std::string left, std::string right,
                          std::vector<std::vector<std::string>> replay) {
            ++rep.checks;
            if (agree) {
                ++rep.agreements;
                return;
            }
            ++rep.disagreements_count;
            rep.disagreements.push_back(
                Disagreement{i, write_model(m), ctx, std::move(query), std::move(left), std::move(right), std::move(replay)});
        };

        std::optional<Counterpart> cp;
        if (suite == Suite::Theorem2 || suite == Suite::Proposition3 || suite == Suite::Theorem5) {
            if (sig.assignment_count() > caps.state_cap) {
                ++rep.skipped;
                continue;
            }
            cp.emplace(build_counterpart(m, caps.state_cap));
        }

        switch (suite) {
            case Suite::Theorem1:
            case Suite::Theorem2: {
                std::vector<Event> cause = gen_cause(rng, sig, actual);
                Formula effect = gen_effect(rng, sig, caps.formula_depth);
                bool hp = is_actual_cause_hp(m, u, cause, effect, HpOptions{true}).is_cause;
                AbstractVerdict ab;
                AbstractOptions opts;
                opts.minimality = caps.minimality;
                std::string lang;
                if (suite == Suite::Theorem1) {
                    CausalSetting cs(m, u);
                    WitnessLanguage l = caps.negated ? WitnessLanguage::conj_neg() : WitnessLanguage::conj_only();
                    lang = l.describe();
                    ab = is_actual_cause_abstract(cs, Formula::conj(cause), effect, l, opts);
                } else {
                    StructureSetting ss(cp->structure, cp->context_state[m.context_index(u)]);
                    lang = "pair";
                    ab = is_actual_cause_abstract(ss, Formula::conj(cause), effect, WitnessLanguage::pair(), opts);
                }
                std::string c = to_string(Formula::conj(cause), sig), e = to_string(effect, sig);
                std::vector<std::string> hp_cmd{"cause", "-m", model_file, "-u", ctx, "--cause", c, "--effect", e,
                                                "--mode", "hp"};
                std::vector<std::string> replay{"cause", "-m", model_file, "-u", ctx, "--cause", c, "--effect", e,
                                                "--mode", "abstract", "--lang", lang};
                if (suite == Suite::Theorem2) replay.insert(replay.end(), {"--semantics", "structure"});
                if (caps.minimality != MinimalityScope::EventConjunctions) replay.insert(replay.end(), {"--minimality", "language"});
                record(hp == ab.is_cause, "cause " + c + " effect " + e, "hp cause=" + yes_no(hp),
                       "abstract(" + lang + ") cause=" + yes_no(ab.is_cause) +
                           (ab.tau ? " tau=" + to_string(*ab.tau, sig) : std::string()) +
                           (ab.ac3_violator ? " ac3_violator=" + to_string(*ab.ac3_violator, sig) : std::string()),
                       {hp_cmd, replay});
                break;
            }
            case Suite::Proposition3: {
                StateId s = cp->context_state[m.context_index(u)];
                CfEvaluator ev(cp->structure);
                for (int f = 0; f < caps.formulas_per_model; ++f) {
                    Formula phi = gen_ls_formula(rng, sig, caps.formula_depth);
                    bool left = eval_causal(m, u, phi);
                    bool right = ev.eval(s, intervention_as_counterfactual(phi));
                    std::string text = to_string(phi, sig);
                    record(left == right, "formula " + text, "model=" + yes_no(left), "structure=" + yes_no(right),
                           {{"eval", "-m", model_file, "-u", ctx, "--formula", text, "--semantics", "both"}});
                }
                break;
            }
            case Suite::Theorem4:
            case Suite::Theorem5: {
                auto picks = sample_k(rng, m.context_count(), caps.max_k);
                std::vector<Context> K;
                std::vector<StateId> K2;
                std::string kspec;
                for (std::size_t p : picks) {
                    K.push_back(m.context_at(p));
                    kspec += (kspec.empty() ? "" : ";") + context_to_string(K.back(), sig);
                    if (cp) K2.push_back(cp->context_state[p]);
                }
                std::vector<Event> cand = gen_cause(rng, sig, m.solve(K.front()));
                Formula effect = gen_effect(rng, sig, caps.formula_depth);
                ExplanationVerdict hp = is_explanation_hp(m, K, cand, effect);
                AbstractOptions opts;
                opts.minimality = caps.minimality;
                ExplanationVerdict ab =
                    suite == Suite::Theorem4
                        ? is_explanation_abstract(m, K, Formula::conj(cand), effect, WitnessLanguage::conj_only(), opts)
                        : is_explanation_abstract(cp->structure, K2, Formula::conj(cand), effect, WitnessLanguage::pair(),
                                                  opts);
                std::string c = to_string(Formula::conj(cand), sig), e = to_string(effect, sig);
                std::vector<std::string> hp_cmd{"explain", "-m", model_file, "--K", kspec, "--cand", c,
                                                "--effect", e, "--mode", "hp"};
                std::vector<std::string> replay{"explain", "-m", model_file, "--K", kspec, "--cand", c,
                                                "--effect", e, "--mode", "abstract"};
                if (suite == Suite::Theorem5) {
                    replay.insert(replay.end(), {"--semantics", "structure", "--lang", "pair"});
                } else {
                    replay.insert(replay.end(), {"--lang", "conj"});
                }
                if (caps.minimality != MinimalityScope::EventConjunctions) replay.insert(replay.end(), {"--minimality", "language"});
                record(hp.is_explanation == ab.is_explanation && hp.nontrivial == ab.nontrivial,
                       "K {" + kspec + "} cand " + c + " effect " + e, "hp " + explanation_summary(hp),
                       "abstract " + explanation_summary(ab), {hp_cmd, replay});
                break;
            }
        }
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

namespace {

std::string suite_name(Suite s) {
    switch (s) {
        case Suite::Theorem1: return "hp-vs-abstract-causal";
        case Suite::Theorem2: return "hp-vs-abstract-structure";
        case Suite::Proposition3: return "model-vs-structure-formulas";
        case Suite::Theorem4: return "explanation-hp-vs-abstract-causal";
        case Suite::Theorem5: return "explanation-hp-vs-abstract-structure";
    }
    return "?";
}

}  // namespace

std::string report_to_json(const DifferentialReport& r, bool with_time) {
    nlohmann::ordered_json j;
    j["suite"] = static_cast<int>(r.suite);
    j["name"] = suite_name(r.suite);
    j["caps"] = {{"maxEndogenous", r.caps.max_endogenous}, {"maxExogenous", r.caps.max_exogenous},
                 {"maxDomain", r.caps.max_domain},         {"formulaDepth", r.caps.formula_depth},
                 {"trials", r.caps.trials},                {"seed", r.caps.seed},
                 {"stateCap", r.caps.state_cap},           {"maxK", r.caps.max_k},
                 {"formulasPerModel", r.caps.formulas_per_model}, {"negated", r.caps.negated},
                 {"minimality", to_string(r.caps.minimality)}};
    j["trials"] = r.trials;
    j["checks"] = r.checks;
    j["agreements"] = r.agreements;
    j["disagreements"] = r.disagreements_count;
    j["skipped"] = r.skipped;
    if (with_time) j["seconds"] = r.seconds;
    j["bundles"] = nlohmann::ordered_json::array();
    for (const Disagreement& d : r.disagreements) {
        j["bundles"].push_back({{"trial", d.trial},
                                {"model", d.model_text},
                                {"context", d.context},
                                {"query", d.query},
                                {"left", d.left},
                                {"right", d.right},
                                {"replay", d.replay}});
    }
    return j.dump(2);
}

std::string report_to_text(const DifferentialReport& r) {
    std::ostringstream out;
    out << suite_name(r.suite) << ": trials=" << r.trials << " checks=" << r.checks << " agree=" << r.agreements
        << " disagree=" << r.disagreements_count << " skipped=" << r.skipped << " time=" << r.seconds << "s\n";
    std::size_t shown = 0;
    for (const Disagreement& d : r.disagreements) {
        if (++shown > 10) {
            out << "  ... " << (r.disagreements.size() - 10) << " more\n";
            break;
        }
        out << "  trial " << d.trial << " [" << d.context << "] " << d.query << ": " << d.left << " vs " << d.right
            << "\n";
    }
    return out.str();
}

void write_repro_bundles(const DifferentialReport& r, const std::string& dir) {
    std::filesystem::create_directories(dir);
    for (const Disagreement& d : r.disagreements) {
        std::string stem = (std::filesystem::path(dir) / ("trial-" + std::to_string(d.trial))).string();
        std::ofstream(stem + ".cm") << d.model_text;
        nlohmann::ordered_json j{{"trial", d.trial},  {"context", d.context}, {"query", d.query},
                                 {"left", d.left},    {"right", d.right},     {"replay", d.replay}};
        std::ofstream(stem + ".json") << j.dump(2) << "\n";
    }
    std::ofstream(std::filesystem::path(dir) / "report.json") << report_to_json(r) << "\n";
}

// Worked examples.

namespace {

const char* kRockThrowing = R"(# Suzy and Billy both throw; Suzy's rock arrives first.
model rock_throwing
exo U : {u00, u01, u10, u11}
var ST : {0, 1}
var BT : {0, 1}
var SH : {0, 1}
var BH : {0, 1}
var BS : {0, 1}
eq ST = case { U=u10 | U=u11 : 1; default : 0 }
eq BT = case { U=u01 | U=u11 : 1; default : 0 }
eq SH = case { ST=1 : 1; default : 0 }
eq BH = case { BT=1 & SH=0 : 1; default : 0 }
eq BS = case { SH=1 | BH=1 : 1; default : 0 }
)";

const char* kCopyChain = R"(model copy_chain
exo U : {0, 1, 2}
var X : {0, 1, 2}
var Y : {0, 1, 2}
eq X = case { U=1 : 1; U=2 : 2; default : 0 }
eq Y = case { X=1 : 1; X=2 : 2; default : 0 }
)";

const char* kTiming = R"(# Context u<s><b><k>: s and b say who throws; k=1 Suzy's rock arrives first,
# k=2 Billy's does, k=3 they arrive together.
model rock_throwing_timing
exo U : {u001, u002, u003, u011, u012, u013, u101, u102, u103, u111, u112, u113}
var ST : {0, 1}
var BT : {0, 1}
var SH : {0, 1}
var BH : {0, 1}
var BS : {0, 1}
eq ST = case { U=u101 | U=u102 | U=u103 | U=u111 | U=u112 | U=u113 : 1; default : 0 }
eq BT = case { U=u011 | U=u012 | U=u013 | U=u111 | U=u112 | U=u113 : 1; default : 0 }
eq SH = case {
  ST=1 & BT=0 : 1;
  ST=1 & (U=u001 | U=u011 | U=u101 | U=u111 | U=u003 | U=u013 | U=u103 | U=u113) : 1;
  default : 0 }
eq BH = case {
  BT=1 & ST=0 : 1;
  BT=1 & (U=u002 | U=u012 | U=u102 | U=u112 | U=u003 | U=u013 | U=u103 | U=u113) : 1;
  default : 0 }
eq BS = case { SH=1 | BH=1 : 1; default : 0 }
)";

const char* kBomb = R"(# Bob either runs from the room or stays and types a combination; the secret is 7.
model bomb
exo UR : {0, 1}
exo UC : {0, 1, 2, 3, 4, 5, 6, 7, 8, 9}
var Run : {0, 1}
var Combo : {0, 1, 2, 3, 4, 5, 6, 7, 8, 9}
var Explode : {0, 1}
eq Run = case { UR=1 : 1; default : 0 }
eq Combo = case {
  Run=0 & UC=1 : 1; Run=0 & UC=2 : 2; Run=0 & UC=3 : 3; Run=0 & UC=4 : 4; Run=0 & UC=5 : 5;
  Run=0 & UC=6 : 6; Run=0 & UC=7 : 7; Run=0 & UC=8 : 8; Run=0 & UC=9 : 9;
  default : 0 }
eq Explode = case { Run=1 | Combo!=7 : 1; default : 0 }
)";

const char* kBombStates = R"(
state ran { UR=1, UC=7, Run=1, Combo=0, Explode=1 }
state stays_wrong { UR=0, UC=3, Run=0, Combo=3, Explode=1 }
state stays_right { UR=0, UC=7, Run=0, Combo=7, Explode=0 }
)";

const char* kDegenerate = R"(model degenerate
exo U1 : {0, 1}
exo U2 : {0, 1}
var A : {0, 1}
var B : {0, 1}
var C : {0, 1}
eq A = case { U1=1 : 1; default : 0 }
eq B = case { U2=1 : 1; default : 0 }
eq C = case { A=1 : 1; default : 0 }
)";

std::string bomb_structure_text(bool knowing, const std::string& model_ref) {
    std::string out = std::string("structure ") + (knowing ? "bomb_knowing" : "bomb_ignorant");
    if (!model_ref.empty()) out += " over " + model_ref;
    out += "\n# Closest state to 'ran' in which Bob stays";
    out += knowing ? " has him enter the secret.\n" : " has him enter a wrong combination.\n";
    out += kBombStates;
    out += knowing ? "order ran : {stays_right}; {stays_wrong}\n" : "order ran : {stays_wrong}; {stays_right}\n";
    return out;
}

struct Example4 {
    CfStructure structure;
    StateId s;
    StateId s_prime;
};

// The counterpart of the rock-throwing model, except that the closest state
// to the U=u11 solution is the all-zero U=u00 state.
Example4 example4(const CausalModel& rt) {
    Counterpart cp = build_counterpart(rt);
    const Signature& sig = rt.signature();
    StateId s = cp.context_state[rt.context_index(parse_context("U=u11", sig))];
    StateId s_prime = cp.context_state[rt.context_index(parse_context("U=u00", sig))];
    std::vector<std::string> names;
    std::vector<Assignment> interp;
    for (std::size_t t = 0; t < cp.structure.size(); ++t) {
        names.push_back(cp.structure.state_name(static_cast<StateId>(t)));
        interp.push_back(cp.structure.interp(static_cast<StateId>(t)));
    }
    std::map<StateId, Tiers> tiers{{s, Tiers{{s}, {s_prime}}}};
    auto order = std::make_shared<TieredCloseness>(names.size(), std::move(tiers), cp.structure.order_ptr());
    return Example4{CfStructure("example4", sig, std::move(names), std::move(interp), std::move(order)), s, s_prime};
}

ScenarioResult scenario(const std::string& name, const std::function<std::string()>& body) {
    ScenarioResult r{name, false, ""};
    try {
        r.detail = body();
        r.passed = r.detail.rfind("ok", 0) == 0;
    } catch (const std::exception& e) {
        r.detail = std::string("error: ") + e.what();
    }
    return r;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> corpus_files() {
    CausalModel rt = parse_model(kRockThrowing);
    return {
        {"rock_throwing.cm", kRockThrowing},
        {"copy_chain.cm", kCopyChain},
        {"rock_throwing_timing.cm", kTiming},
        {"bomb.cm", kBomb},
        {"bomb_ignorant.cfs", bomb_structure_text(false, "bomb.cm")},
        {"bomb_knowing.cfs", bomb_structure_text(true, "bomb.cm")},
        {"degenerate.cm", kDegenerate},
        {"example4.cfs", write_structure(example4(rt).structure, "rock_throwing.cm")},
    };
}

std::vector<ScenarioResult> run_corpus() {
    std::vector<ScenarioResult> out;

    out.push_back(scenario("rock-throwing", [] {
        CausalModel m = parse_model(kRockThrowing);
        const Signature& sig = m.signature();
        Context u = parse_context("U=u11", sig);
        Formula bs = parse_formula("BS=1", sig);
        CauseVerdict st = is_actual_cause_hp(m, u, parse_event_list("ST=1", sig), bs);
        CauseVerdict bt = is_actual_cause_hp(m, u, parse_event_list("BT=1", sig), bs);
        bool witness = !st.witnesses.empty() && st.witnesses.front().fixed == parse_event_list("BH=0", sig);
        if (st.is_cause && witness && !bt.is_cause) return std::string("ok: ST=1 cause with W={BH}, BT=1 not");
        return "mismatch: ST=1 " + yes_no(st.is_cause) + ", BT=1 " + yes_no(bt.is_cause);
    }));

    out.push_back(scenario("copy-chain-counterfactuals", [] {
        CausalModel m = parse_model(kCopyChain);
        const Signature& sig = m.signature();
        Formula both = parse_formula("(X!=0) ~> (Y=1) & (X!=0) ~> (Y=2)", sig);
        bool causal = eval_causal(m, parse_context("U=0", sig), both);
        Counterpart cp = build_counterpart(m);
        CfEvaluator ev(cp.structure);
        bool any = false;
        for (std::size_t s = 0; s < cp.structure.size(); ++s) any = any || ev.eval(static_cast<StateId>(s), both);
        StateId s0 = cp.context_state[m.context_index(parse_context("U=0", sig))];
        bool y1 = ev.eval(s0, parse_formula("(X=1) ~> (Y=1)", sig));
        bool y2 = ev.eval(s0, parse_formula("(X=1) ~> (Y=2)", sig));
        if (causal && !any && y1 && !y2) return std::string("ok: true in the model, false at every structure state");
        return "mismatch: model " + yes_no(causal) + ", some state " + yes_no(any);
    }));

    out.push_back(scenario("backtracking", [] {
        CausalModel rt = parse_model(kRockThrowing);
        const Signature& sig = rt.signature();
        Example4 ex = example4(rt);
        Formula bt = parse_formula("BT=1", sig), bs = parse_formula("BS=1", sig);
        StructureSetting set(ex.structure, ex.s);
        AbstractVerdict free = is_actual_cause_abstract(set, bt, bs, WitnessLanguage::conj_only());
        WitnessLanguage pinned = WitnessLanguage::conj_only();
        pinned.pins = parse_event_list("U=u11", sig);
        StructureSetting set2(ex.structure, ex.s);
        AbstractVerdict pin = is_actual_cause_abstract(set2, bt, bs, pinned);
        auto closest = closest_states(ex.structure, ex.s, parse_formula("BT=0", sig));
        bool closest_ok = closest == std::vector<StateId>{ex.s_prime};
        CorrespondenceReport rep = check_correspondence(ex.structure, rt);
        if (free.is_cause && !pin.is_cause && closest_ok && !rep.condition_c) {
            return std::string("ok: BT=1 is a cause by backtracking; pinning U=u11 removes it");
        }
        return "mismatch: free " + yes_no(free.is_cause) + ", pinned " + yes_no(pin.is_cause);
    }));

    out.push_back(scenario("explanation", [] {
        CausalModel m = parse_model(kTiming);
        const Signature& sig = m.signature();
        auto K = [&](std::initializer_list<const char*> names) {
            std::vector<Context> k;
            for (const char* n : names) k.push_back(parse_context(std::string("U=") + n, sig));
            return k;
        };
        Formula bs = parse_formula("BS=1", sig);
        auto both = parse_event_list("ST=1 & BT=1", sig);
        auto k1 = is_explanation_hp(m, K({"u111", "u112", "u101"}), both, bs);
        auto k2 = is_explanation_hp(m, K({"u111", "u112"}), both, bs);
        auto k3 = K({"u003", "u103", "u013", "u113"});
        auto st = is_explanation_hp(m, k3, parse_event_list("ST=1", sig), bs);
        auto bt = is_explanation_hp(m, k3, parse_event_list("BT=1", sig), bs);
        auto k3both = is_explanation_hp(m, k3, both, bs);
        bool ok = k1.is_explanation && k1.nontrivial && k2.is_explanation && !k2.ex4 && st.is_explanation &&
                  bt.is_explanation && !k3both.ex2;
        if (ok) return std::string("ok: K1 nontrivial, K2 trivial, K3 minimality");
        return "mismatch: K1 " + explanation_summary(k1) + ", K2 " + explanation_summary(k2) + ", K3 ST " +
               yes_no(st.is_explanation) + " BT " + yes_no(bt.is_explanation) + " both ex2 " + yes_no(k3both.ex2);
    }));

    out.push_back(scenario("bomb", [] {
        CausalModel m = parse_model(kBomb);
        const Signature& sig = m.signature();
        Context u = parse_context("UR=1, UC=7", sig);
        Formula run = parse_formula("Run=1", sig), boom = parse_formula("Explode=1", sig);
        bool hp = is_actual_cause_hp(m, u, parse_event_list("Run=1", sig), boom).is_cause;
        CfsLoadOptions opts;
        opts.model = &m;
        CfStructure ignorant = parse_structure(bomb_structure_text(false, ""), opts);
        CfStructure knowing = parse_structure(bomb_structure_text(true, ""), opts);
        StructureSetting a(ignorant, *ignorant.find_state("ran"));
        StructureSetting b(knowing, *knowing.find_state("ran"));
        bool ig = is_actual_cause_abstract(a, run, boom, WitnessLanguage::conj_only()).is_cause;
        bool kn = is_actual_cause_abstract(b, run, boom, WitnessLanguage::conj_only()).is_cause;
        if (hp && !ig && kn) return std::string("ok: HP cause; not a cause for ignorant Bob; a cause for knowing Bob");
        return "mismatch: hp " + yes_no(hp) + ", ignorant " + yes_no(ig) + ", knowing " + yes_no(kn);
    }));

    out.push_back(scenario("unrestricted-disjunction", [] {
        CausalModel m = parse_model(kDegenerate);
        const Signature& sig = m.signature();
        Context u = parse_context("U1=1, U2=1", sig);
        Formula effect = parse_formula("C=1", sig);
        Counterpart cp = build_counterpart(m);
        StateId s = cp.context_state[m.context_index(u)];
        const Assignment actual = m.solve(u);
        std::string failures;
        bool spurious = false;
        for (VarId v : sig.endogenous_ids()) {
            Formula cand = Formula::event(v, actual[static_cast<std::size_t>(v)]);
            CausalSetting cs(m, u);
            StructureSetting ss(cp.structure, s);
            AbstractCauseChecker c1(cs, effect, WitnessLanguage::general(1));
            AbstractCauseChecker c2(ss, effect, WitnessLanguage::general(1));
            if (!c1.ac2_witness(cand) || !c2.ac2_witness(cand)) failures += " " + to_string(cand, sig);
            spurious = spurious || !is_actual_cause_hp(m, u, {Event{v, actual[static_cast<std::size_t>(v)]}}, effect).is_cause;
        }
        if (failures.empty() && spurious) return std::string("ok: every true event passes AC2' under gen:1");
        return "mismatch: AC2' failed for" + failures;
    }));
    return out;
}

}  // namespace accause
