#ifndef ACCAUSE_CORRESPONDENCE_HPP
#define ACCAUSE_CORRESPONDENCE_HPP

#include <optional>
#include <string>
#include <vector>

#include "accause/causal_model.hpp"
#include "accause/cf_structure.hpp"

namespace accause {

/// The builder's closeness: d_s(t) = ([t != s], #exogenous differences,
/// sum over Y of w_Y * [t violates F_Y]) compared lexicographically, with
/// w_Y = (|V|+1)^(|V| - depth(Y)). Holds no reference to the model.
class WeightedViolationCloseness : public Closeness {
  public:
    WeightedViolationCloseness(const CausalModel& m, const std::vector<Assignment>& interp);

    bool at_least_as_close(StateId s, StateId t, StateId u) const override;
    std::optional<Tiers> tiers(StateId s) const override;

    struct Cost {
        int moved;
        int exo_diff;
        long long violation;
        auto operator<=>(const Cost&) const = default;
    };
    Cost cost(StateId s, StateId t) const;
    long long violation_weight(StateId t) const { return weight_.at(static_cast<std::size_t>(t)); }

  private:
    std::size_t num_exo_;
    std::vector<Assignment> exo_part_;
    std::vector<long long> weight_;
};

/// Violation weights w_Y indexed by endogenous position. Throws SemanticError
/// when the sum could overflow 64 bits.
std::vector<long long> violation_weights(const CausalModel& m);

struct Counterpart {
    CfStructure structure;
    /// Indexed by CausalModel::context_index.
    std::vector<StateId> context_state;
};

/// One state per total assignment (mixed radix, first variable slowest),
/// named s<index>, ordered by WeightedViolationCloseness.
Counterpart build_counterpart(const CausalModel& m, std::size_t cap = 1000000);

struct ConditionAFailure {
    VarId y;
    /// s_Y as a full assignment; the entry for y is -1.
    Assignment setting;
    StateId base;
    StateId offending;
};

struct ConditionCFailure {
    StateId base;
    Formula psi;
    StateId offending;
};

struct CorrespondenceOptions {
    bool strong = true;
    /// Literal condition (a), including base states that satisfy W_Y = s_Y
    /// while violating Y's equation.
    bool strict = false;
    /// Additional formulas checked under condition (c).
    std::vector<Formula> extra_psi;
    /// Pairwise disjunctions are skipped when there are more conjunctions than this.
    std::size_t max_pair_conjunctions = 2048;
};

struct CorrespondenceReport {
    bool strong = true;
    bool strict = false;
    bool condition_a = true;
    std::optional<ConditionAFailure> a_failure;
    bool condition_b = true;
    std::optional<Assignment> b_missing;
    bool condition_c = true;
    std::optional<ConditionCFailure> c_failure;
    std::size_t checked_psi_count = 0;
    bool pairs_skipped = false;

    bool corresponds() const { return condition_a; }
    bool strongly_corresponds() const { return condition_a && condition_b && condition_c; }
};

/// Throws SemanticError when the signatures differ.
CorrespondenceReport check_correspondence(const CfStructure& m2, const CausalModel& m,
                                          const CorrespondenceOptions& opts = {});

/// Strong correspondence (lenient condition (a)) and s |= U=u.
bool strongly_consistent(const CfStructure& m2, StateId s, const CausalModel& m, const Context& u);
/// Same, reusing a strong report for the pair.
bool strongly_consistent(const CorrespondenceReport& report, const CfStructure& m2, StateId s,
                         const Context& u);

bool compatible(const CausalModel& m, const CfStructure& m2);
bool compatible(const CorrespondenceReport& report, const CausalModel& m, const CfStructure& m2);

/// K-level compatibility given a strong report for the model pair.
bool compatible_K(const CorrespondenceReport& report, const CfStructure& m2, const std::vector<Context>& K,
                  const std::vector<StateId>& K2);
bool compatible_K(const CausalModel& m, const CfStructure& m2, const std::vector<Context>& K,
                  const std::vector<StateId>& K2);

Context exogenous_part(const Assignment& a, const Signature& sig);

}  // namespace accause

#endif
