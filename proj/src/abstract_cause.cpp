#include "accause/abstract_cause.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "accause/propositional.hpp"

namespace accause {

CausalSetting::CausalSetting(const CausalModel& m, Context u) : m_(m), u_(std::move(u)), actual_(m.solve(u_)) {}

bool CausalSetting::antecedent_satisfiable(const Formula& f) { return prop_consistent(f, m_.signature()); }

bool StructureSetting::holds(const Formula& f) {
    if (contains_intervention(f)) {
        throw SemanticError("interventions cannot be evaluated in a counterfactual structure");
    }
    return ev_.eval(s_, f);
}

WitnessLanguage WitnessLanguage::conj_neg() {
    WitnessLanguage l;
    l.allow_negated = true;
    return l;
}

WitnessLanguage WitnessLanguage::pair() {
    WitnessLanguage l;
    l.mode = DisjunctionMode::PairOnCause;
    return l;
}

WitnessLanguage WitnessLanguage::general(int k) {
    WitnessLanguage l;
    l.mode = DisjunctionMode::BoundedGeneral;
    l.general_k = k;
    return l;
}

std::string WitnessLanguage::describe() const {
    std::string out;
    switch (mode) {
        case DisjunctionMode::None: out = allow_negated ? "conj-neg" : "conj"; break;
        case DisjunctionMode::PairOnCause: out = allow_negated ? "pair-neg" : "pair"; break;
        case DisjunctionMode::BoundedGeneral: out = "gen:" + std::to_string(general_k); break;
    }
    if (!pins.empty()) out += "+pins";
    return out;
}

WitnessLanguage parse_language(std::string_view text) {
    if (text == "conj") return WitnessLanguage::conj_only();
    if (text == "conj-neg") return WitnessLanguage::conj_neg();
    if (text == "pair") return WitnessLanguage::pair();
    if (text == "pair-neg") {
        WitnessLanguage l = WitnessLanguage::pair();
        l.allow_negated = true;
        return l;
    }
    if (text.substr(0, 4) == "gen:") {
        std::string k(text.substr(4));
        if (!k.empty() && std::all_of(k.begin(), k.end(), [](char c) { return c >= '0' && c <= '9'; }) &&
            k.size() < 4) {
            int v = std::stoi(k);
            if (v >= 1) return WitnessLanguage::general(v);
        }
    }
    throw ParseError("unknown witness language '" + std::string(text) + "' (conj, conj-neg, pair, gen:K)", 1, 1);
}

namespace {

constexpr std::size_t kCandidateCap = 4000000;

struct Option {
    Formula f;
    int rank;
};

struct Candidate {
    Formula f;
    bool has_disjunct;
    std::size_t conjuncts;
    std::vector<int> key;
};

std::vector<std::vector<int>> combinations(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k > n) return out;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        out.push_back(idx);
        int i = k;
        while (i > 0 && idx[static_cast<std::size_t>(i - 1)] == n - k + i - 1) --i;
        if (i == 0) break;
        ++idx[static_cast<std::size_t>(i - 1)];
        for (int j = i; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

std::vector<Formula> disjunctive_parts(const WitnessLanguage& lang, const Signature& sig, const Formula& cause,
                                       const std::optional<Formula>& effect) {
    std::vector<Formula> out;
    if (lang.mode == DisjunctionMode::PairOnCause) {
        std::vector<Event> base;
        if (lang.pair_base) {
            base = *lang.pair_base;
        } else if (auto evs = as_event_conjunction(cause)) {
            base = *evs;
        } else {
            throw SemanticError("the pair language needs a cause that is a conjunction of primitive events");
        }
        if (base.empty()) throw SemanticError("the pair language needs a nonempty cause");
        std::vector<VarId> xs;
        Assignment probe(sig.size(), 0);
        for (const Event& e : base) xs.push_back(e.var);
        Formula actual = Formula::conj(base);
        do {
            std::vector<Event> alt;
            bool same = true;
            for (const Event& e : base) {
                alt.push_back(Event{e.var, probe[static_cast<std::size_t>(e.var)]});
                same = same && probe[static_cast<std::size_t>(e.var)] == e.value;
            }
            if (!same) out.push_back(Formula::disj({actual, Formula::conj(alt)}));
        } while (next_assignment(probe, xs, sig));
    } else if (lang.mode == DisjunctionMode::BoundedGeneral) {
        std::vector<Formula> pool;
        for (VarId v : sig.endogenous_ids()) {
            for (std::size_t x = 0; x < sig.range_size(v); ++x) {
                pool.push_back(Formula::event(v, static_cast<ValueId>(x)));
                pool.push_back(Formula::negate(Formula::event(v, static_cast<ValueId>(x))));
            }
        }
        if (is_propositional(cause)) {
            pool.push_back(cause);
            pool.push_back(Formula::negate(cause));
        }
        if (effect && is_propositional(*effect)) {
            pool.push_back(*effect);
            pool.push_back(Formula::negate(*effect));
        }
        for (int size = 2; size <= lang.general_k + 1; ++size) {
            auto combos = combinations(static_cast<int>(pool.size()), size);
            if (out.size() + combos.size() > kCandidateCap) {
                throw SemanticError("witness language too large; lower K");
            }
            for (const auto& c : combos) {
                std::vector<Formula> members;
                for (int i : c) members.push_back(pool[static_cast<std::size_t>(i)]);
                out.push_back(Formula::disj(std::move(members)));
            }
        }
    }
    return out;
}

// Canonical key for dedup: truth table over the mentioned variables when
// small enough, otherwise the printed form.
class EquivalenceKeys {
  public:
    EquivalenceKeys(const Signature& sig, const std::vector<Candidate>& cands) : sig_(sig) {
        std::set<VarId> vars;
        for (const Candidate& c : cands) {
            auto m = mentioned_vars(c.f);
            vars.insert(m.begin(), m.end());
        }
        std::size_t points = 1;
        for (VarId v : vars) {
            points *= sig.range_size(v);
            if (points > 4096) break;
        }
        if (points > 4096) return;
        vars_.assign(vars.begin(), vars.end());
        use_table_ = true;
        Assignment a(sig.size(), 0);
        do {
            points_.push_back(a);
        } while (!vars_.empty() && next_assignment(a, vars_, sig));
    }

    std::string key(const Formula& f) const {
        if (!use_table_) return to_string(f, sig_);
        std::string k(points_.size(), '0');
        for (std::size_t i = 0; i < points_.size(); ++i) k[i] = eval_prop(f, points_[i]) ? '1' : '0';
        return k;
    }

  private:
    const Signature& sig_;
    std::vector<VarId> vars_;
    std::vector<Assignment> points_;
    bool use_table_ = false;
};

}  // namespace

std::vector<LanguageMember> enumerate_language(const WitnessLanguage& lang, const Signature& sig,
                                               const Formula& cause, const std::optional<Formula>& effect,
                                               const LanguageFilter& filter) {
    std::set<VarId> pinned;
    for (const Event& e : lang.pins) pinned.insert(e.var);

    std::vector<VarId> vars;
    std::vector<std::vector<Option>> options;
    for (VarId v : sig.endogenous_ids()) {
        if (pinned.count(v)) continue;
        std::vector<Option> opts;
        int rank = 0;
        const std::size_t r = sig.range_size(v);
        for (std::size_t x = 0; x < r; ++x, ++rank) {
            Formula f = Formula::event(v, static_cast<ValueId>(x));
            if (!filter.conjunct || filter.conjunct(f)) opts.push_back(Option{f, rank});
        }
        if (lang.allow_negated && r >= 3 && r < 16) {
            std::vector<unsigned> masks;
            for (unsigned mask = 1; mask < (1u << r); ++mask) {
                int bits = __builtin_popcount(mask);
                if (bits <= static_cast<int>(r) - 2) masks.push_back(mask);
            }
            std::stable_sort(masks.begin(), masks.end(),
                             [](unsigned a, unsigned b) { return __builtin_popcount(a) < __builtin_popcount(b); });
            for (unsigned mask : masks) {
                std::vector<Formula> negs;
                for (std::size_t x = 0; x < r; ++x) {
                    if (mask & (1u << x)) negs.push_back(Formula::negate(Formula::event(v, static_cast<ValueId>(x))));
                }
                Formula f = Formula::conj(std::move(negs));
                if (!filter.conjunct || filter.conjunct(f)) opts.push_back(Option{f, rank});
                ++rank;
            }
        }
        if (!opts.empty()) {
            vars.push_back(v);
            options.push_back(std::move(opts));
        }
    }

    std::vector<Formula> disj = disjunctive_parts(lang, sig, cause, effect);
    std::vector<Formula> pin_parts;
    for (const Event& e : lang.pins) pin_parts.push_back(Formula::event(e));

    std::size_t total = disj.size() + 1;
    for (const auto& o : options) {
        total *= o.size() + 1;
        if (total > kCandidateCap) throw SemanticError("witness language too large for this signature");
    }

    std::vector<Candidate> cands;
    std::vector<Formula> chosen;
    std::vector<int> key;
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == vars.size()) {
            for (std::size_t d = 0; d <= disj.size(); ++d) {
                std::vector<Formula> parts = pin_parts;
                parts.insert(parts.end(), chosen.begin(), chosen.end());
                if (d > 0) parts.push_back(disj[d - 1]);
                Formula tau = Formula::conj(std::move(parts));
                if (filter.member && !filter.member(tau)) continue;
                std::vector<int> k = key;
                k.push_back(static_cast<int>(d));
                cands.push_back(Candidate{tau, d > 0, chosen.size(), std::move(k)});
            }
            return;
        }
        rec(i + 1);
        if (chosen.size() >= lang.max_conjuncts) return;
        for (const Option& o : options[i]) {
            chosen.push_back(o.f);
            key.push_back(static_cast<int>(vars[i]));
            key.push_back(o.rank);
            rec(i + 1);
            key.pop_back();
            key.pop_back();
            chosen.pop_back();
        }
    };
    rec(0);

    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        return std::make_tuple(!a.has_disjunct, a.conjuncts, std::cref(a.key)) <
               std::make_tuple(!b.has_disjunct, b.conjuncts, std::cref(b.key));
    });
    EquivalenceKeys keys(sig, cands);
    std::set<std::string> seen;
    std::vector<LanguageMember> out;
    for (Candidate& c : cands) {
        if (!seen.insert(keys.key(c.f)).second) continue;
        out.push_back(LanguageMember{std::move(c.f), c.has_disjunct, c.conjuncts});
    }
    return out;
}

std::vector<Formula> enumerate_witnesses(const WitnessLanguage& lang, Setting& setting, const Formula& cause,
                                         const std::optional<Formula>& effect) {
    const Assignment& actual = setting.actual();
    LanguageFilter filter;
    filter.conjunct = [&](const Formula& f) { return eval_prop(f, actual); };
    filter.member = [&](const Formula& f) { return eval_prop(f, actual); };
    std::vector<Formula> out;
    for (auto& m : enumerate_language(lang, setting.signature(), cause, effect, filter)) out.push_back(m.formula);
    return out;
}

AbstractCauseChecker::AbstractCauseChecker(Setting& setting, Formula effect, WitnessLanguage lang,
                                           AbstractOptions opts)
    : setting_(setting),
      effect_(effect),
      not_effect_(Formula::negate(effect)),
      lang_(std::move(lang)),
      opts_(opts) {}

WitnessLanguage AbstractCauseChecker::language_for(const Formula& cause) const {
    WitnessLanguage l = lang_;
    if (l.mode == DisjunctionMode::PairOnCause && !l.pair_base) {
        auto evs = as_event_conjunction(cause);
        if (!evs || evs->empty()) {
            throw SemanticError("the pair language needs a cause that is a conjunction of primitive events");
        }
        l.pair_base = *evs;
    }
    return l;
}

namespace {

std::optional<Formula> search_ac2(Setting& setting, const Formula& cause, const Formula& effect,
                                  const Formula& not_effect, const WitnessLanguage& lang, bool allow_vacuous,
                                  std::size_t& tried) {
    Formula not_cause = Formula::negate(cause);
    for (const Formula& tau : enumerate_witnesses(lang, setting, cause, effect)) {
        ++tried;
        Formula antecedent = Formula::conj({not_cause, tau});
        if (!allow_vacuous && !setting.antecedent_satisfiable(antecedent)) continue;
        if (setting.holds(Formula::counterfactual(antecedent, not_effect))) return tau;
    }
    return std::nullopt;
}

std::string pair_key(const WitnessLanguage& lang, const Signature& sig) {
    return lang.pair_base ? to_string(Formula::conj(*lang.pair_base), sig) : std::string();
}

}  // namespace

std::optional<Formula> AbstractCauseChecker::cached_ac2(const Formula& cause, const WitnessLanguage& l) {
    const Signature& sig = setting_.signature();
    std::string key = to_string(cause, sig) + "\x1f" + pair_key(l, sig);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    auto tau = search_ac2(setting_, cause, effect_, not_effect_, l, opts_.allow_vacuous, tried_);
    memo_.emplace(std::move(key), tau);
    return tau;
}

std::optional<Formula> AbstractCauseChecker::ac2_witness(const Formula& cause) {
    return cached_ac2(cause, language_for(cause));
}

AbstractVerdict AbstractCauseChecker::check(const Formula& cause) {
    const Signature& sig = setting_.signature();
    if (!is_propositional(cause)) throw SemanticError("causes must be propositional formulas");
    AbstractVerdict v;
    std::size_t before = tried_;
    v.ac1 = setting_.holds(Formula::conj({cause, effect_}));

    WitnessLanguage l = language_for(cause);
    v.tau = cached_ac2(cause, l);
    v.ac2 = v.tau.has_value();

    LanguageFilter weaker;
    weaker.conjunct = [&](const Formula& f) { return prop_entails(cause, f, sig); };
    weaker.member = [&](const Formula& f) {
        if (opts_.minimality == MinimalityScope::EventConjunctions && !as_event_conjunction(f)) return false;
        return prop_entails(cause, f, sig) && !prop_entails(f, cause, sig);
    };
    v.ac3 = true;
    for (const LanguageMember& m : enumerate_language(l, sig, cause, effect_, weaker)) {
        // A conjunctive weakening is tested with its own pair disjunct, as a cause in its own right.
        auto evs = as_event_conjunction(m.formula);
        bool own = l.mode == DisjunctionMode::PairOnCause && !lang_.pair_base && evs && !evs->empty();
        if (cached_ac2(m.formula, own ? language_for(m.formula) : l)) {
            v.ac3 = false;
            v.ac3_violator = m.formula;
            break;
        }
    }
    v.is_cause = v.ac1 && v.ac2 && v.ac3;
    v.witnesses_tried = tried_ - before;
    return v;
}

AbstractVerdict is_actual_cause_abstract(Setting& setting, const Formula& cause, const Formula& effect,
                                         const WitnessLanguage& lang, const AbstractOptions& opts) {
    AbstractCauseChecker checker(setting, effect, lang, opts);
    return checker.check(cause);
}

MinimalityScope parse_minimality_scope(std::string_view text) {
    if (text == "language") return MinimalityScope::Language;
    if (text == "conj") return MinimalityScope::EventConjunctions;
    throw ParseError("unknown minimality scope '" + std::string(text) + "' (expected language or conj)", 1, 1);
}

std::string to_string(MinimalityScope scope) {
    return scope == MinimalityScope::Language ? "language" : "conj";
}

Formula extract_abstract_witness(const HpWitness& hp, const std::vector<Event>& cause) {
    std::vector<Formula> parts;
    for (const Event& e : hp.fixed) parts.push_back(Formula::event(e));
    parts.push_back(Formula::disj({Formula::conj(cause), Formula::conj(hp.xprime)}));
    return Formula::conj(std::move(parts));
}

}  // namespace accause
