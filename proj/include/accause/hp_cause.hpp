#ifndef ACCAUSE_HP_CAUSE_HPP
#define ACCAUSE_HP_CAUSE_HPP

#include <optional>
#include <vector>

#include "accause/causal_model.hpp"

namespace accause {

/// Certificate for AC2: W is fixed at its actual values w* while X is set
/// to x'. `fixed` carries both W and w*.
struct HpWitness {
    std::vector<Event> fixed;
    std::vector<Event> xprime;
};

struct CauseVerdict {
    bool is_cause = false;
    bool ac1 = false;
    bool ac2 = false;
    bool ac3 = false;
    std::vector<HpWitness> witnesses;
    /// Strict sub-conjunction that satisfies AC2 when ac3 fails.
    std::optional<std::vector<Event>> ac3_violator;
};

struct HpOptions {
    /// Stop the AC2 search at the first witness.
    bool first_only = false;
};

/// Modified Halpern-Pearl actual causality. W is searched by increasing
/// size then lexicographically; x' lexicographically.
CauseVerdict is_actual_cause_hp(const CausalModel& m, const Context& u,
                                const std::vector<Event>& cause, const Formula& effect,
                                const HpOptions& opts = {});

/// AC2 alone, for callers that only need existence (AC3, explanation).
std::vector<HpWitness> hp_ac2_witnesses(const CausalModel& m, const Context& u,
                                        const std::vector<Event>& cause, const Formula& effect,
                                        bool first_only);

/// Rejects empty causes, repeated or exogenous variables, out-of-range values.
void check_cause_conjunction(const std::vector<Event>& cause, const Signature& sig);

}  // namespace accause

#endif
