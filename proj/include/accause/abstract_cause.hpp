#ifndef ACCAUSE_ABSTRACT_CAUSE_HPP
#define ACCAUSE_ABSTRACT_CAUSE_HPP

#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "accause/causal_model.hpp"
#include "accause/cf_structure.hpp"
#include "accause/hp_cause.hpp"

namespace accause {

/// A point of evaluation: a causal setting (M,u) or a counterfactual setting (M',s).
class Setting {
  public:
    virtual ~Setting() = default;
    virtual const Signature& signature() const = 0;
    /// The assignment that holds at the point (solution, or the state's interpretation).
    virtual const Assignment& actual() const = 0;
    virtual bool holds(const Formula& f) = 0;
    /// Whether some state (or some consistent intervention vector) satisfies f.
    virtual bool antecedent_satisfiable(const Formula& f) = 0;
};

class CausalSetting : public Setting {
  public:
    CausalSetting(const CausalModel& m, Context u);
    const Signature& signature() const override { return m_.signature(); }
    const Assignment& actual() const override { return actual_; }
    bool holds(const Formula& f) override { return eval_causal(m_, u_, f); }
    bool antecedent_satisfiable(const Formula& f) override;

    const CausalModel& model() const { return m_; }
    const Context& context() const { return u_; }

  private:
    const CausalModel& m_;
    Context u_;
    Assignment actual_;
};

class StructureSetting : public Setting {
  public:
    StructureSetting(const CfStructure& m, StateId s) : m_(m), s_(s), ev_(m) {}
    const Signature& signature() const override { return m_.signature(); }
    const Assignment& actual() const override { return m_.interp(s_); }
    bool holds(const Formula& f) override;
    bool antecedent_satisfiable(const Formula& f) override { return ev_.any_state(f); }

    const CfStructure& structure() const { return m_; }
    StateId state() const { return s_; }
    CfEvaluator& evaluator() { return ev_; }

  private:
    const CfStructure& m_;
    StateId s_;
    CfEvaluator ev_;
};

enum class DisjunctionMode { None, PairOnCause, BoundedGeneral };

/// The witness language C_X: conjunctions of primitive events (optionally
/// negated), plus at most one disjunctive conjunct, plus pinned conjuncts.
struct WitnessLanguage {
    bool allow_negated = false;
    DisjunctionMode mode = DisjunctionMode::None;
    /// BoundedGeneral: at most this many disjunction connectives.
    int general_k = 1;
    std::vector<Event> pins;
    std::size_t max_conjuncts = std::numeric_limits<std::size_t>::max();
    /// X=x for the pair disjunct; defaults to the cause under test.
    std::optional<std::vector<Event>> pair_base;

    static WitnessLanguage conj_only() { return {}; }
    static WitnessLanguage conj_neg();
    static WitnessLanguage pair();
    static WitnessLanguage general(int k);

    std::string describe() const;
};

/// "conj", "conj-neg", "pair" or "gen:K".
WitnessLanguage parse_language(std::string_view text);

/// Per-candidate metadata, kept so that results come out in a canonical order.
struct LanguageMember {
    Formula formula;
    bool has_disjunct = false;
    std::size_t conjuncts = 0;
};

struct LanguageFilter {
    /// Prunes conjuncts (an event, or a conjunction of negated events on one variable).
    std::function<bool(const Formula&)> conjunct;
    std::function<bool(const Formula&)> member;
};

/// Every member of the language accepted by the filter, deduplicated up to
/// propositional equivalence. Order: members with a disjunct first, then by
/// number of conjuncts, then lexicographically by variable.
std::vector<LanguageMember> enumerate_language(const WitnessLanguage& lang, const Signature& sig,
                                               const Formula& cause, const std::optional<Formula>& effect,
                                               const LanguageFilter& filter);

/// The members of the language that hold in the setting.
std::vector<Formula> enumerate_witnesses(const WitnessLanguage& lang, Setting& setting, const Formula& cause,
                                         const std::optional<Formula>& effect = std::nullopt);

/// Which weaker formulas the minimality conditions (AC3', EX2') range over.
enum class MinimalityScope {
    /// Only strictly weaker conjunctions of primitive events (drawn from the language).
    EventConjunctions,
    /// Every strictly weaker member of the witness language.
    Language,
};

struct AbstractOptions {
    /// Accept witnesses whose antecedent no state satisfies.
    bool allow_vacuous = false;
    MinimalityScope minimality = MinimalityScope::EventConjunctions;
};

MinimalityScope parse_minimality_scope(std::string_view text);
std::string to_string(MinimalityScope scope);

struct AbstractVerdict {
    bool is_cause = false;
    bool ac1 = false;
    bool ac2 = false;
    bool ac3 = false;
    std::optional<Formula> tau;
    std::optional<Formula> ac3_violator;
    std::size_t witnesses_tried = 0;
};

/// Reusable checker for one setting, effect and language; memoises AC2'.
class AbstractCauseChecker {
  public:
    AbstractCauseChecker(Setting& setting, Formula effect, WitnessLanguage lang, AbstractOptions opts = {});

    AbstractVerdict check(const Formula& cause);
    /// First AC2' witness for a candidate in canonical order, nullopt if none.
    std::optional<Formula> ac2_witness(const Formula& cause);

    Setting& setting() { return setting_; }
    const WitnessLanguage& language() const { return lang_; }

  private:
    WitnessLanguage language_for(const Formula& cause) const;
    std::optional<Formula> cached_ac2(const Formula& cause, const WitnessLanguage& l);

    Setting& setting_;
    Formula effect_;
    Formula not_effect_;
    WitnessLanguage lang_;
    AbstractOptions opts_;
    std::map<std::string, std::optional<Formula>> memo_;
    std::size_t tried_ = 0;
};

AbstractVerdict is_actual_cause_abstract(Setting& setting, const Formula& cause, const Formula& effect,
                                         const WitnessLanguage& lang, const AbstractOptions& opts = {});

/// W=w* & (X=x | X=x') from an HP certificate.
Formula extract_abstract_witness(const HpWitness& hp, const std::vector<Event>& cause);

}  // namespace accause

#endif
