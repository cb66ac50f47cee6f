#include "accause/explanation.hpp"

#include <algorithm>
#include <map>

#include "accause/propositional.hpp"

namespace accause {

namespace {

template <typename Fn>
bool for_each_subset_by_size(const std::vector<VarId>& pool, Fn fn) {
    for (std::size_t k = 0; k <= pool.size(); ++k) {
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i) idx[i] = i;
        while (true) {
            std::vector<VarId> subset;
            for (std::size_t i : idx) subset.push_back(pool[i]);
            if (fn(subset)) return true;
            std::size_t i = k;
            while (i > 0 && idx[i - 1] == pool.size() - k + i - 1) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return false;
}

// Strict sub-conjunctions of `cand` by increasing size, the empty one first.
std::vector<std::vector<Event>> strict_subconjunctions(const std::vector<Event>& cand) {
    std::vector<std::vector<Event>> out;
    std::vector<VarId> positions;
    for (std::size_t i = 0; i < cand.size(); ++i) positions.push_back(static_cast<VarId>(i));
    for_each_subset_by_size(positions, [&](const std::vector<VarId>& sub) {
        if (sub.size() < cand.size()) {
            std::vector<Event> part;
            for (VarId i : sub) part.push_back(cand[static_cast<std::size_t>(i)]);
            out.push_back(std::move(part));
        }
        return false;
    });
    return out;
}

void finish(ExplanationVerdict& v) {
    v.is_explanation = v.ex1a && v.ex1b && v.ex2 && v.ex3;
    v.nontrivial = v.is_explanation && v.ex4;
}

}  // namespace

ExplanationVerdict is_explanation_hp(const CausalModel& m, const std::vector<Context>& K,
                                     const std::vector<Event>& cand, const Formula& effect) {
    const Signature& sig = m.signature();
    check_cause_conjunction(cand, sig);
    if (K.empty()) throw SemanticError("the epistemic state must not be empty");
    if (!is_propositional(effect)) throw SemanticError("the explanandum must be propositional");

    std::vector<Assignment> actual;
    for (const Context& u : K) actual.push_back(m.solve(u));

    auto ex1a = [&](const std::vector<Event>& x, std::vector<Ex1aCertificate>* certs) {
        Formula both = Formula::conj({Formula::conj(x), effect});
        bool all = true;
        for (std::size_t i = 0; i < K.size(); ++i) {
            Ex1aCertificate cert;
            cert.member = i;
            cert.applicable = eval_prop(both, actual[i]);
            if (cert.applicable) {
                cert.satisfied = false;
                for (const Event& e : x) {
                    std::vector<VarId> pool;
                    for (VarId y : sig.endogenous_ids()) {
                        if (y != e.var) pool.push_back(y);
                    }
                    bool found = for_each_subset_by_size(pool, [&](const std::vector<VarId>& ys) {
                        std::vector<Event> cause{e};
                        for (VarId y : ys) cause.push_back(Event{y, actual[i][static_cast<std::size_t>(y)]});
                        if (!is_actual_cause_hp(m, K[i], cause, effect, HpOptions{true}).is_cause) return false;
                        cert.conjunct = e;
                        cert.augmentation.assign(cause.begin() + 1, cause.end());
                        return true;
                    });
                    if (found) {
                        cert.satisfied = true;
                        break;
                    }
                }
            }
            all = all && cert.satisfied;
            if (certs) {
                certs->push_back(std::move(cert));
            } else if (!all) {
                return false;
            }
        }
        return all;
    };
    auto ex1b = [&](const std::vector<Event>& x, std::optional<std::size_t>* failure) {
        Formula suff = Formula::intervene(x, effect);
        for (std::size_t i = 0; i < K.size(); ++i) {
            if (!eval_causal(m, K[i], suff)) {
                if (failure) *failure = i;
                return false;
            }
        }
        return true;
    };

    ExplanationVerdict v;
    v.ex1a = ex1a(cand, &v.certificates);
    v.ex1b = ex1b(cand, &v.ex1b_failure);
    v.ex2 = true;
    for (const auto& sub : strict_subconjunctions(cand)) {
        ++v.ex2_candidates;
        if (ex1b(sub, nullptr) && ex1a(sub, nullptr)) {
            v.ex2 = false;
            v.ex2_violator = Formula::conj(sub);
            break;
        }
    }
    Formula c = Formula::conj(cand);
    for (const Assignment& a : actual) {
        v.ex3 = v.ex3 || (eval_prop(c, a) && eval_prop(effect, a));
        v.ex4 = v.ex4 || (!eval_prop(c, a) && eval_prop(effect, a));
    }
    finish(v);
    return v;
}

ExplanationVerdict is_explanation_abstract(const std::vector<Setting*>& K, const Formula& cand,
                                           const Formula& effect, const WitnessLanguage& lang,
                                           const AbstractOptions& opts) {
    if (K.empty()) throw SemanticError("the epistemic state must not be empty");
    if (!is_propositional(cand)) throw SemanticError("explanations must be propositional formulas");
    const Signature& sig = K.front()->signature();
    for (Setting* s : K) {
        if (!(s->signature() == sig)) throw SemanticError("epistemic state mixes signatures");
    }

    WitnessLanguage l = lang;
    if (l.mode == DisjunctionMode::PairOnCause && !l.pair_base) {
        auto evs = as_event_conjunction(cand);
        if (!evs || evs->empty()) {
            throw SemanticError("the pair language needs a candidate that is a conjunction of primitive events");
        }
        l.pair_base = *evs;
    }
    // Conjunctive formulas (the candidate, its sub-conjunctions, conjunctive
    // causes) carry their own pair disjunct; anything else uses the candidate's.
    auto language_for = [&](const Formula& phi) {
        WitnessLanguage out = l;
        if (l.mode == DisjunctionMode::PairOnCause && !lang.pair_base) {
            auto evs = as_event_conjunction(phi);
            if (evs && !evs->empty()) out.pair_base = *evs;
        }
        return out;
    };
    std::map<std::string, std::vector<std::unique_ptr<AbstractCauseChecker>>> checker_sets;
    auto checker = [&](const WitnessLanguage& lx, std::size_t i) -> AbstractCauseChecker& {
        std::string key = lx.pair_base ? to_string(Formula::conj(*lx.pair_base), sig) : std::string();
        auto it = checker_sets.find(key);
        if (it == checker_sets.end()) {
            std::vector<std::unique_ptr<AbstractCauseChecker>> set;
            for (Setting* s : K) set.push_back(std::make_unique<AbstractCauseChecker>(*s, effect, lx, opts));
            it = checker_sets.emplace(key, std::move(set)).first;
        }
        return *it->second[i];
    };

    auto ex1a = [&](const Formula& phi, std::vector<Ex1aCertificate>* certs) {
        const WitnessLanguage lp = language_for(phi);
        LanguageFilter implied;
        implied.conjunct = [&](const Formula& f) { return prop_entails(phi, f, sig); };
        implied.member = [&](const Formula& f) { return prop_entails(phi, f, sig) && !prop_valid(f, sig); };
        std::vector<LanguageMember> tau1s;
        bool computed = false;
        Formula both = Formula::conj({phi, effect});
        bool all = true;
        for (std::size_t i = 0; i < K.size(); ++i) {
            Ex1aCertificate cert;
            cert.member = i;
            cert.applicable = K[i]->holds(both);
            if (cert.applicable) {
                if (!computed) {
                    tau1s = enumerate_language(lp, sig, phi, effect, implied);
                    computed = true;
                }
                cert.satisfied = false;
                // Witness order for tau2: phi's language first, then (for the pair
                // language) plain conjunctions checked with their own pair.
                std::vector<std::pair<Formula, WitnessLanguage>> tau2s;
                for (Formula& f : enumerate_witnesses(lp, *K[i], phi, effect)) tau2s.emplace_back(f, lp);
                if (lp.mode == DisjunctionMode::PairOnCause) {
                    WitnessLanguage plain = lp;
                    plain.mode = DisjunctionMode::None;
                    for (Formula& f : enumerate_witnesses(plain, *K[i], phi, effect)) {
                        if (!f.is_true()) tau2s.emplace_back(f, lang);
                    }
                }
                for (const auto& [tau2, lx] : tau2s) {
                    auto t1 = std::find_if(tau1s.begin(), tau1s.end(), [&](const LanguageMember& t) {
                        return prop_entails(tau2, t.formula, sig);
                    });
                    if (t1 == tau1s.end()) continue;
                    if (!checker(lx, i).check(tau2).is_cause) continue;
                    cert.satisfied = true;
                    cert.tau1 = t1->formula;
                    cert.tau2 = tau2;
                    break;
                }
            }
            all = all && cert.satisfied;
            if (certs) {
                certs->push_back(std::move(cert));
            } else if (!all) {
                return false;
            }
        }
        return all;
    };
    auto ex1b = [&](const Formula& phi, std::optional<std::size_t>* failure) {
        Formula suff = Formula::counterfactual(phi, effect);
        for (std::size_t i = 0; i < K.size(); ++i) {
            if (!K[i]->holds(suff)) {
                if (failure) *failure = i;
                return false;
            }
        }
        return true;
    };

    ExplanationVerdict v;
    v.ex1a = ex1a(cand, &v.certificates);
    v.ex1b = ex1b(cand, &v.ex1b_failure);

    std::vector<Formula> weaker;
    LanguageFilter strictly_weaker;
    strictly_weaker.conjunct = [&](const Formula& f) { return prop_entails(cand, f, sig); };
    strictly_weaker.member = [&](const Formula& f) {
        if (opts.minimality == MinimalityScope::EventConjunctions && !as_event_conjunction(f)) return false;
        return prop_entails(cand, f, sig) && !prop_entails(f, cand, sig);
    };
    for (auto& m : enumerate_language(l, sig, cand, effect, strictly_weaker)) weaker.push_back(m.formula);
    if (auto evs = as_event_conjunction(cand)) {
        for (const auto& sub : strict_subconjunctions(*evs)) {
            Formula f = Formula::conj(sub);
            if (prop_entails(f, cand, sig)) continue;
            bool dup = std::any_of(weaker.begin(), weaker.end(),
                                   [&](const Formula& g) { return prop_equivalent(f, g, sig); });
            if (!dup) weaker.push_back(f);
        }
    }
    v.ex2 = true;
    for (const Formula& phi : weaker) {
        ++v.ex2_candidates;
        if (ex1b(phi, nullptr) && ex1a(phi, nullptr)) {
            v.ex2 = false;
            v.ex2_violator = phi;
            break;
        }
    }

    Formula not_cand = Formula::negate(cand);
    for (Setting* s : K) {
        v.ex3 = v.ex3 || s->holds(Formula::conj({cand, effect}));
        v.ex4 = v.ex4 || s->holds(Formula::conj({not_cand, effect}));
    }
    finish(v);
    return v;
}

ExplanationVerdict is_explanation_abstract(const CausalModel& m, const std::vector<Context>& K,
                                           const Formula& cand, const Formula& effect,
                                           const WitnessLanguage& lang, const AbstractOptions& opts) {
    std::vector<std::unique_ptr<CausalSetting>> owned;
    std::vector<Setting*> ptrs;
    for (const Context& u : K) {
        owned.push_back(std::make_unique<CausalSetting>(m, u));
        ptrs.push_back(owned.back().get());
    }
    return is_explanation_abstract(ptrs, cand, effect, lang, opts);
}

ExplanationVerdict is_explanation_abstract(const CfStructure& m, const std::vector<StateId>& K,
                                           const Formula& cand, const Formula& effect,
                                           const WitnessLanguage& lang, const AbstractOptions& opts) {
    std::vector<std::unique_ptr<StructureSetting>> owned;
    std::vector<Setting*> ptrs;
    for (StateId s : K) {
        owned.push_back(std::make_unique<StructureSetting>(m, s));
        ptrs.push_back(owned.back().get());
    }
    return is_explanation_abstract(ptrs, cand, effect, lang, opts);
}

}  // namespace accause
