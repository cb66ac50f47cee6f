#ifndef ACCAUSE_EXPLANATION_HPP
#define ACCAUSE_EXPLANATION_HPP

#include <memory>
#include <optional>
#include <vector>

#include "accause/abstract_cause.hpp"

namespace accause {

/// EX1(a) outcome for one member of K.
struct Ex1aCertificate {
    std::size_t member = 0;
    /// Whether cand & effect holds there (otherwise nothing is required).
    bool applicable = false;
    bool satisfied = true;
    // HP: the conjunct X=x and the augmentation Y=y.
    std::optional<Event> conjunct;
    std::vector<Event> augmentation;
    // Abstract: tau1 and tau2.
    std::optional<Formula> tau1;
    std::optional<Formula> tau2;
};

struct ExplanationVerdict {
    bool is_explanation = false;
    bool nontrivial = false;
    bool ex1a = false;
    bool ex1b = false;
    bool ex2 = false;
    bool ex3 = false;
    bool ex4 = false;
    std::vector<Ex1aCertificate> certificates;
    /// First member of K where the sufficiency condition fails.
    std::optional<std::size_t> ex1b_failure;
    std::optional<Formula> ex2_violator;
    /// Number of weaker candidates examined for EX2.
    std::size_t ex2_candidates = 0;
};

/// HP explanation relative to a set of contexts.
ExplanationVerdict is_explanation_hp(const CausalModel& m, const std::vector<Context>& K,
                                     const std::vector<Event>& cand, const Formula& effect);

/// Abstract explanation relative to a set of points of evaluation sharing one signature.
/// With the pair language, the pair disjunct is built on the candidate's events.
ExplanationVerdict is_explanation_abstract(const std::vector<Setting*>& K, const Formula& cand,
                                           const Formula& effect, const WitnessLanguage& lang,
                                           const AbstractOptions& opts = {});

ExplanationVerdict is_explanation_abstract(const CausalModel& m, const std::vector<Context>& K,
                                           const Formula& cand, const Formula& effect,
                                           const WitnessLanguage& lang, const AbstractOptions& opts = {});

ExplanationVerdict is_explanation_abstract(const CfStructure& m, const std::vector<StateId>& K,
                                           const Formula& cand, const Formula& effect,
                                           const WitnessLanguage& lang, const AbstractOptions& opts = {});

}  // namespace accause

#endif
