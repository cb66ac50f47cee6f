#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "accause/abstract_cause.hpp"
#include "accause/correspondence.hpp"
#include "accause/explanation.hpp"
#include "accause/harness.hpp"
#include "accause/hp_cause.hpp"
#include "accause/parser.hpp"
#include "verdict_json.hpp"

using namespace accause;
using accause::cli::Json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitSemantic = 3;

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string model;
    std::string structure;
    std::string context;
    std::string state;
    bool json = false;

    std::string formula;
    /// Empty until resolved: structure when only -s is given, model otherwise.
    std::string semantics;
    bool dot = false;

    std::string cause;
    std::string effect;
    std::string mode = "hp";
    std::string lang;
    std::string pins;
    std::string minimality = "conj";
    bool allow_vacuous = false;
    bool first_only = false;

    std::string k_contexts;
    std::string k_states;

    std::string output;
    std::size_t cap = 1000000;

    bool strict = false;
    bool lenient = false;
    bool weak = false;
    std::vector<std::string> psi;

    int theorem = 1;
    FuzzCaps caps;
    std::string bundle_dir;
    bool no_time = false;

    std::string write_models;
};

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, sep)) {
        auto b = cur.find_first_not_of(" \t");
        auto e = cur.find_last_not_of(" \t");
        if (b != std::string::npos) out.push_back(cur.substr(b, e - b + 1));
    }
    return out;
}

struct Loaded {
    std::unique_ptr<CausalModel> model;
    std::unique_ptr<CfStructure> structure;
    std::optional<Counterpart> counterpart;

    const CfStructure& cf() const { return structure ? *structure : counterpart->structure; }
};

Loaded load(const Options& o, bool need_model, bool need_structure) {
    Loaded l;
    if (!o.model.empty()) l.model = std::make_unique<CausalModel>(load_model(o.model));
    if (need_model && !l.model) throw UsageError("this command needs a model (-m)");
    if (!o.structure.empty()) {
        l.structure = std::make_unique<CfStructure>(load_structure(o.structure, l.model.get()));
        if (l.model && !(l.structure->signature() == l.model->signature())) {
            throw SemanticError("structure and model signatures differ");
        }
    } else if (need_structure) {
        if (!l.model) throw UsageError("structure semantics needs -s or a model to build the counterpart from");
        l.counterpart.emplace(build_counterpart(*l.model));
    }
    return l;
}

const Signature& signature_of(const Loaded& l) {
    return l.model ? l.model->signature() : l.cf().signature();
}

StateId state_by_name(const CfStructure& m, const std::string& name) {
    auto s = m.find_state(name);
    if (!s) throw UsageError("unknown state '" + name + "' in structure '" + m.name() + "'");
    return *s;
}

// --state NAME, or the state that a context maps to.
StateId resolve_state(const Loaded& l, const std::string& state, const std::string& context) {
    if (!state.empty()) return state_by_name(l.cf(), state);
    if (context.empty() || !l.model) throw UsageError("give --state, or a model and a context (-u)");
    Context u = parse_context(context, l.model->signature());
    if (l.counterpart) return l.counterpart->context_state[l.model->context_index(u)];
    auto s = l.cf().find_assignment(l.model->solve(u));
    if (!s) throw SemanticError("no state of '" + l.cf().name() + "' matches the solution for " + context);
    return *s;
}

WitnessLanguage language(const Options& o, const Signature& sig, bool structure) {
    WitnessLanguage l = parse_language(o.lang.empty() ? (structure ? "pair" : "conj") : o.lang);
    if (!o.pins.empty()) l.pins = parse_event_list(o.pins, sig);
    return l;
}

AbstractOptions abstract_options(const Options& o) {
    AbstractOptions a;
    a.allow_vacuous = o.allow_vacuous;
    a.minimality = parse_minimality_scope(o.minimality);
    return a;
}

Json document(const std::string& command, Json query, Json verdict, double seconds) {
    return {{"command", command}, {"query", std::move(query)}, {"verdict", std::move(verdict)}, {"seconds", seconds}};
}

std::string flag(bool b) { return b ? "yes" : "no"; }

std::string events_text(const std::vector<Event>& evs, const Signature& sig) {
    return evs.empty() ? "(none)" : to_string(Formula::conj(evs), sig);
}

// Subcommands. Each returns the JSON document and prints text itself when not in JSON mode.

Json cmd_solve(const Options& o) {
    Loaded l = load(o, true, false);
    const CausalModel& m = *l.model;
    if (o.dot) {
        std::string dot = model_to_dot(m);
        if (!o.json) std::cout << dot;
        return document("solve", {{"model", o.model}}, {{"kind", "dot"}, {"dot", dot}}, 0.0);
    }
    if (o.context.empty()) throw UsageError("solve needs a context (-u) unless --dot is given");
    const Signature& sig = m.signature();
    Context u = parse_context(o.context, sig);
    Assignment a = m.solve(u);
    if (!o.json) {
        for (VarId v : sig.endogenous_ids()) std::cout << sig.name(v) << " = " << sig.value_name(v, a[v]) << "\n";
    }
    return document("solve", {{"model", o.model}, {"context", context_to_string(u, sig)}},
                    {{"kind", "solution"}, {"assignment", cli::assignment_json(a, sig, sig.endogenous_ids())}}, 0.0);
}

Json cmd_eval(const Options& o) {
    bool want_model = o.semantics != "structure";
    bool want_structure = o.semantics != "model";
    Loaded l = load(o, want_model, want_structure);
    const Signature& sig = signature_of(l);
    Formula phi = parse_formula(o.formula, sig);
    Json verdict{{"kind", "eval"}};
    Json query{{"formula", to_string(phi, sig)}, {"semantics", o.semantics}};
    std::optional<bool> left, right;
    if (want_model) {
        if (o.context.empty()) throw UsageError("model semantics needs a context (-u)");
        left = eval_causal(*l.model, parse_context(o.context, sig), phi);
        verdict["model"] = *left;
        query["context"] = o.context;
    }
    if (want_structure) {
        StateId s = resolve_state(l, o.state, o.context);
        right = eval_cf(l.cf(), s, intervention_as_counterfactual(phi));
        verdict["structure"] = *right;
        query["state"] = l.cf().state_name(s);
    }
    if (left && right) verdict["agree"] = *left == *right;
    if (!o.json) {
        if (left) std::cout << "model:     " << (*left ? "true" : "false") << "\n";
        if (right) std::cout << "structure: " << (*right ? "true" : "false") << "\n";
    }
    return document("eval", query, verdict, 0.0);
}

Json cmd_cause(const Options& o) {
    bool structure = o.semantics == "structure";
    if (o.semantics != "model" && !structure) throw UsageError("--semantics must be model or structure");
    if (o.mode == "hp" && structure) throw UsageError("hp mode works on causal settings only");
    Loaded l = load(o, !structure, structure);
    const Signature& sig = signature_of(l);
    Formula effect = parse_formula(o.effect, sig);
    Json query{{"mode", o.mode}, {"semantics", o.semantics}, {"effect", to_string(effect, sig)}};
    auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };

    if (o.mode == "hp") {
        std::vector<Event> cause = parse_event_list(o.cause, sig);
        Context u = parse_context(o.context, sig);
        query["context"] = context_to_string(u, sig);
        query["cause"] = to_string(Formula::conj(cause), sig);
        CauseVerdict v = is_actual_cause_hp(*l.model, u, cause, effect, HpOptions{o.first_only});
        double t = elapsed();
        if (!o.json) {
            std::cout << "cause:  " << (v.is_cause ? "yes" : "no") << "  (AC1 " << flag(v.ac1) << ", AC2 "
                      << flag(v.ac2) << ", AC3 " << flag(v.ac3) << ")\n";
            for (const HpWitness& w : v.witnesses) {
                std::cout << "  W = {";
                for (std::size_t i = 0; i < w.fixed.size(); ++i) std::cout << (i ? ", " : "") << sig.name(w.fixed[i].var);
                std::cout << "}  w* = " << events_text(w.fixed, sig) << "  x' = " << events_text(w.xprime, sig) << "\n";
            }
            if (v.ac3_violator) std::cout << "  AC3 fails: " << events_text(*v.ac3_violator, sig) << " suffices\n";
        }
        return document("cause", query, cli::to_json(v, sig), t);
    }
    if (o.mode != "abstract") throw UsageError("--mode must be hp or abstract");

    Formula cause = parse_formula(o.cause, sig);
    query["cause"] = to_string(cause, sig);
    WitnessLanguage lang = language(o, sig, structure);
    query["language"] = lang.describe();
    std::unique_ptr<Setting> setting;
    if (structure) {
        StateId s = resolve_state(l, o.state, o.context);
        query["state"] = l.cf().state_name(s);
        setting = std::make_unique<StructureSetting>(l.cf(), s);
    } else {
        Context u = parse_context(o.context, sig);
        query["context"] = context_to_string(u, sig);
        setting = std::make_unique<CausalSetting>(*l.model, u);
    }
    AbstractVerdict v = is_actual_cause_abstract(*setting, cause, effect, lang, abstract_options(o));
    double t = elapsed();
    if (!o.json) {
        std::cout << "cause:  " << (v.is_cause ? "yes" : "no") << "  (AC1' " << flag(v.ac1) << ", AC2' "
                  << flag(v.ac2) << ", AC3' " << flag(v.ac3) << ")\n";
        if (v.tau) std::cout << "  tau = " << to_string(*v.tau, sig) << "\n";
        if (v.ac3_violator) std::cout << "  AC3' fails: " << to_string(*v.ac3_violator, sig) << " is weaker\n";
    }
    return document("cause", query, cli::to_json(v, sig), t);
}

Json cmd_explain(const Options& o) {
    bool structure = o.semantics == "structure";
    if (o.semantics != "model" && !structure) throw UsageError("--semantics must be model or structure");
    if (o.mode == "hp" && structure) throw UsageError("hp mode works on causal models only");
    Loaded l = load(o, !structure, structure);
    const Signature& sig = signature_of(l);
    Formula effect = parse_formula(o.effect, sig);
    Json query{{"mode", o.mode}, {"semantics", o.semantics}, {"effect", to_string(effect, sig)}};
    auto start = std::chrono::steady_clock::now();

    std::vector<Context> K;
    if (!o.k_contexts.empty()) {
        if (!l.model) throw UsageError("--K needs a model");
        for (const std::string& c : split(o.k_contexts, ';')) K.push_back(parse_context(c, sig));
    }
    ExplanationVerdict v;
    if (o.mode == "hp") {
        if (K.empty()) throw UsageError("give the epistemic state with --K \"ctx; ctx; ...\"");
        std::vector<Event> cand = parse_event_list(o.cause, sig);
        query["candidate"] = to_string(Formula::conj(cand), sig);
        Json ks = Json::array();
        for (const Context& u : K) ks.push_back(context_to_string(u, sig));
        query["K"] = ks;
        v = is_explanation_hp(*l.model, K, cand, effect);
    } else if (o.mode == "abstract") {
        Formula cand = parse_formula(o.cause, sig);
        query["candidate"] = to_string(cand, sig);
        WitnessLanguage lang = language(o, sig, structure);
        query["language"] = lang.describe();
        Json ks = Json::array();
        if (structure) {
            std::vector<StateId> states;
            if (!o.k_states.empty()) {
                for (const std::string& n : split(o.k_states, ';')) states.push_back(state_by_name(l.cf(), n));
            } else {
                if (K.empty()) throw UsageError("give --states, or --K with a model");
                for (const Context& u : K) states.push_back(resolve_state(l, "", context_to_string(u, sig)));
            }
            for (StateId s : states) ks.push_back(l.cf().state_name(s));
            v = is_explanation_abstract(l.cf(), states, cand, effect, lang, abstract_options(o));
        } else {
            if (K.empty()) throw UsageError("give the epistemic state with --K \"ctx; ctx; ...\"");
            for (const Context& u : K) ks.push_back(context_to_string(u, sig));
            v = is_explanation_abstract(*l.model, K, cand, effect, lang, abstract_options(o));
        }
        query["K"] = ks;
    } else {
        throw UsageError("--mode must be hp or abstract");
    }
    double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.json) {
        std::cout << "explanation: " << (v.is_explanation ? "yes" : "no")
                  << "  nontrivial: " << (v.nontrivial ? "yes" : "no") << "\n"
                  << "  EX1(a) " << flag(v.ex1a) << "  EX1(b) " << flag(v.ex1b) << "  EX2 " << flag(v.ex2)
                  << "  EX3 " << flag(v.ex3) << "  EX4 " << flag(v.ex4) << "\n";
        for (const Ex1aCertificate& c : v.certificates) {
            if (!c.applicable) continue;
            std::cout << "  member " << c.member << ": ";
            if (!c.satisfied) {
                std::cout << "no cause found\n";
            } else if (c.conjunct) {
                std::cout << events_text({*c.conjunct}, sig) << " with " << events_text(c.augmentation, sig) << "\n";
            } else {
                std::cout << "tau1 = " << to_string(*c.tau1, sig) << ", tau2 = " << to_string(*c.tau2, sig) << "\n";
            }
        }
        if (v.ex2_violator) std::cout << "  EX2 fails: " << to_string(*v.ex2_violator, sig) << "\n";
    }
    return document("explain", query, cli::to_json(v, sig), t);
}

Json cmd_closest(const Options& o) {
    Loaded l = load(o, false, true);
    const Signature& sig = signature_of(l);
    StateId s = resolve_state(l, o.state, o.context);
    Formula phi = parse_formula(o.formula, sig);
    std::vector<StateId> closest = closest_states(l.cf(), s, phi);
    Json names = Json::array();
    for (StateId t : closest) names.push_back(l.cf().state_name(t));
    if (!o.json) {
        if (closest.empty()) std::cout << "no state satisfies " << to_string(phi, sig) << "\n";
        for (StateId t : closest) {
            std::cout << l.cf().state_name(t) << "  "
                      << assignment_to_string(l.cf().interp(t), sig, [&] {
                             std::vector<VarId> all;
                             for (VarId v = 0; v < static_cast<VarId>(sig.size()); ++v) all.push_back(v);
                             return all;
                         }())
                      << "\n";
        }
    }
    return document("closest", {{"state", l.cf().state_name(s)}, {"formula", to_string(phi, sig)}},
                    {{"kind", "closest"}, {"states", names}}, 0.0);
}

Json cmd_build_cf(const Options& o) {
    Loaded l = load(o, true, false);
    const CausalModel& m = *l.model;
    Counterpart cp = build_counterpart(m, o.cap);
    std::string ref = o.model;
    if (!o.output.empty()) {
        auto dir = std::filesystem::absolute(o.output).parent_path();
        ref = std::filesystem::relative(std::filesystem::absolute(o.model), dir).generic_string();
        std::ofstream out(o.output);
        if (!out) throw UsageError("cannot write '" + o.output + "'");
        out << write_structure(cp.structure, ref);
    } else if (!o.json) {
        std::cout << write_structure(cp.structure, ref);
    }
    Json map = Json::object();
    for (std::size_t i = 0; i < m.context_count(); ++i) {
        map[context_to_string(m.context_at(i), m.signature())] = cp.structure.state_name(cp.context_state[i]);
    }
    if (!o.json && !o.output.empty()) {
        std::cout << "wrote " << cp.structure.size() << " states to " << o.output << "\n";
    }
    return document("build-cf", {{"model", o.model}, {"output", o.output}},
                    {{"kind", "counterpart"}, {"states", cp.structure.size()}, {"contextStates", map}}, 0.0);
}

Json cmd_check(const Options& o) {
    if (o.strict && o.lenient) throw UsageError("--strict and --lenient are exclusive");
    Loaded l = load(o, true, true);
    const Signature& sig = l.model->signature();
    CorrespondenceOptions opts;
    opts.strict = o.strict;
    opts.strong = !o.weak;
    for (const std::string& p : o.psi) opts.extra_psi.push_back(parse_formula(p, sig));
    auto start = std::chrono::steady_clock::now();
    CorrespondenceReport r = check_correspondence(l.cf(), *l.model, opts);
    double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    Json v = cli::to_json(r, l.cf());
    if (!o.json) {
        std::cout << "structure " << l.cf().name() << " vs model " << l.model->name() << " ("
                  << (r.strict ? "strict" : "lenient") << ")\n"
                  << "  (a) " << flag(r.condition_a) << "\n";
        if (r.strong) {
            std::cout << "  (b) " << flag(r.condition_b) << "\n"
                      << "  (c) " << flag(r.condition_c) << "  over " << r.checked_psi_count << " formulas"
                      << (r.pairs_skipped ? " (pairwise disjunctions skipped)" : "") << "\n";
        }
        if (r.a_failure) {
            std::cout << "  (a) fails for " << sig.name(r.a_failure->y) << ": base "
                      << l.cf().state_name(r.a_failure->base) << ", offending "
                      << l.cf().state_name(r.a_failure->offending) << "\n";
        }
        if (r.c_failure) {
            std::cout << "  (c) fails at " << l.cf().state_name(r.c_failure->base) << " for "
                      << to_string(r.c_failure->psi, sig) << ": closest " << l.cf().state_name(r.c_failure->offending)
                      << "\n";
        }
    }
    return document("check-correspondence", {{"model", o.model}, {"structure", o.structure}, {"strict", o.strict}},
                    v, t);
}

Json cmd_fuzz(const Options& o) {
    if (o.theorem < 1 || o.theorem > 5) throw UsageError("--theorem must be 1..5");
    FuzzCaps caps = o.caps;
    caps.minimality = parse_minimality_scope(o.minimality);
    DifferentialReport r = run_differential(static_cast<Suite>(o.theorem), caps);
    if (!o.bundle_dir.empty()) write_repro_bundles(r, o.bundle_dir);
    if (!o.json) std::cout << report_to_text(r);
    Json rep = Json::parse(report_to_json(r, !o.no_time));
    rep["kind"] = "differential";
    return document("fuzz", {{"theorem", o.theorem}, {"trials", caps.trials}, {"seed", caps.seed}}, rep,
                    o.no_time ? 0.0 : r.seconds);
}

Json cmd_corpus(const Options& o) {
    if (!o.write_models.empty()) {
        std::filesystem::create_directories(o.write_models);
        for (const auto& [name, text] : corpus_files()) {
            std::ofstream(std::filesystem::path(o.write_models) / name) << text;
        }
    }
    auto start = std::chrono::steady_clock::now();
    Json list = Json::array();
    bool all = true;
    for (const ScenarioResult& r : run_corpus()) {
        all = all && r.passed;
        list.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
        if (!o.json) std::cout << (r.passed ? "PASS  " : "FAIL  ") << r.name << ": " << r.detail << "\n";
    }
    double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return document("corpus", {{"writeModels", o.write_models}}, {{"kind", "corpus"}, {"passed", all}, {"scenarios", list}},
                    t);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Actual causality and explanation checker for causal models and counterfactual structures"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("-m,--model", o.model, "causal model file (.cm)");
        sub->add_flag("--json", o.json, "print a JSON document");
    };
    auto structure_opts = [&](CLI::App* sub) {
        sub->add_option("-s,--structure", o.structure, "counterfactual structure file (.cfs); default: the counterpart");
        sub->add_option("--state", o.state, "state name in the structure");
    };
    auto abstract_opts = [&](CLI::App* sub) {
        sub->add_option("--lang", o.lang, "witness language: conj, conj-neg, pair, pair-neg, gen:K");
        sub->add_option("--pin", o.pins, "conjuncts every witness must contain");
        sub->add_flag("--allow-vacuous", o.allow_vacuous, "accept witnesses no state satisfies");
        sub->add_option("--minimality", o.minimality, "weakenings for minimality: conj or language")
            ->check(CLI::IsMember({"conj", "language"}));
    };

    auto* solve = app.add_subcommand("solve", "solve a model in a context");
    common(solve);
    solve->add_option("-u,--context", o.context, "context, e.g. \"U=u11\"");
    solve->add_flag("--dot", o.dot, "print the dependency graph in DOT");

    auto* eval = app.add_subcommand("eval", "evaluate a formula");
    common(eval);
    structure_opts(eval);
    eval->add_option("-u,--context", o.context, "context");
    eval->add_option("-f,--formula", o.formula, "formula")->required();
    eval->add_option("--semantics", o.semantics, "model, structure or both (default: structure when only -s is given)")
        ->check(CLI::IsMember({"model", "structure", "both"}));

    auto* cause = app.add_subcommand("cause", "check actual causality");
    common(cause);
    structure_opts(cause);
    abstract_opts(cause);
    cause->add_option("-u,--context", o.context, "context");
    cause->add_option("--cause", o.cause, "candidate cause")->required();
    cause->add_option("--effect", o.effect, "effect formula")->required();
    cause->add_option("--mode", o.mode, "hp or abstract")->check(CLI::IsMember({"hp", "abstract"}));
    cause->add_option("--semantics", o.semantics, "model or structure")->check(CLI::IsMember({"model", "structure"}));
    cause->add_flag("--first", o.first_only, "stop at the first AC2 witness");

    auto* explain = app.add_subcommand("explain", "check explanations relative to an epistemic state");
    common(explain);
    structure_opts(explain);
    abstract_opts(explain);
    explain->add_option("--K", o.k_contexts, "contexts separated by ';'");
    explain->add_option("--states", o.k_states, "structure states separated by ';'");
    explain->add_option("--cand", o.cause, "candidate explanation")->required();
    explain->add_option("--effect", o.effect, "explanandum")->required();
    explain->add_option("--mode", o.mode, "hp or abstract")->check(CLI::IsMember({"hp", "abstract"}));
    explain->add_option("--semantics", o.semantics, "model or structure")->check(CLI::IsMember({"model", "structure"}));

    auto* closest = app.add_subcommand("closest", "closest states satisfying a formula");
    common(closest);
    structure_opts(closest);
    closest->add_option("-u,--context", o.context, "context (selects the matching state)");
    closest->add_option("-f,--formula", o.formula, "formula")->required();

    auto* build = app.add_subcommand("build-cf", "build the counterpart structure of a model");
    common(build);
    build->add_option("-o,--output", o.output, "output .cfs file (default: standard output)");
    build->add_option("--cap", o.cap, "largest number of states");

    auto* check = app.add_subcommand("check-correspondence", "check (strong) correspondence of a structure and a model");
    common(check);
    structure_opts(check);
    check->add_flag("--strict", o.strict, "literal condition (a)");
    check->add_flag("--lenient", o.lenient, "lenient condition (a) (default)");
    check->add_flag("--weak", o.weak, "check correspondence only, not strong correspondence");
    check->add_option("--psi", o.psi, "extra formulas for condition (c)");

    auto* fuzz = app.add_subcommand("fuzz", "differential test on random models");
    fuzz->add_flag("--json", o.json, "print a JSON document");
    fuzz->add_option("--theorem", o.theorem, "1: HP vs abstract (models), 2: HP vs abstract (structures), "
                                             "3: formulas, 4/5: explanations");
    fuzz->add_option("--trials", o.caps.trials);
    fuzz->add_option("--seed", o.caps.seed);
    fuzz->add_option("--max-endogenous", o.caps.max_endogenous);
    fuzz->add_option("--max-exogenous", o.caps.max_exogenous);
    fuzz->add_option("--max-domain", o.caps.max_domain);
    fuzz->add_option("--depth", o.caps.formula_depth, "formula depth");
    fuzz->add_option("--state-cap", o.caps.state_cap);
    fuzz->add_option("--max-k", o.caps.max_k);
    fuzz->add_option("--formulas", o.caps.formulas_per_model, "formulas per model (theorem 3)");
    fuzz->add_flag("--negated", o.caps.negated, "allow negated conjuncts in witnesses (theorem 1)");
    fuzz->add_option("--minimality", o.minimality, "conj or language")->check(CLI::IsMember({"conj", "language"}));
    fuzz->add_option("--out", o.bundle_dir, "directory for repro bundles");
    fuzz->add_flag("--no-time", o.no_time, "omit timings (byte-identical reports)");

    auto* corpus = app.add_subcommand("corpus", "run the worked examples");
    corpus->add_flag("--json", o.json, "print a JSON document");
    corpus->add_option("--write-models", o.write_models, "also write the example files into this directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }
    if (o.semantics.empty()) o.semantics = !o.structure.empty() && o.model.empty() ? "structure" : "model";

    try {
        Json doc;
        if (*solve) doc = cmd_solve(o);
        else if (*eval) doc = cmd_eval(o);
        else if (*cause) doc = cmd_cause(o);
        else if (*explain) doc = cmd_explain(o);
        else if (*closest) doc = cmd_closest(o);
        else if (*build) doc = cmd_build_cf(o);
        else if (*check) doc = cmd_check(o);
        else if (*fuzz) doc = cmd_fuzz(o);
        else doc = cmd_corpus(o);
        if (o.json) std::cout << doc.dump(2) << "\n";
        return 0;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const SemanticError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSemantic;
    }
}
