#ifndef ACCAUSE_PROPOSITIONAL_HPP
#define ACCAUSE_PROPOSITIONAL_HPP

#include <set>
#include <vector>

#include "accause/formula.hpp"

namespace accause {

/// Valuation semantics: X=x is true iff `a` maps X to x.
/// Throws SemanticError on Intervene/Counterfactual nodes.
bool eval_prop(const Formula& f, const Assignment& a);

/// Endogenous variables occurring in f (negated or not).
std::set<VarId> free_endogenous(const Formula& f, const Signature& sig);

/// All variables occurring in f, exogenous included.
std::set<VarId> mentioned_vars(const Formula& f);

/// Satisfiable over total assignments of `sig`. Enumerates only the variables
/// occurring in f; the rest cannot affect its truth.
bool prop_consistent(const Formula& f, const Signature& sig);

/// Every assignment satisfying phi satisfies psi.
bool prop_entails(const Formula& phi, const Formula& psi, const Signature& sig);

bool prop_valid(const Formula& f, const Signature& sig);

bool prop_equivalent(const Formula& a, const Formula& b, const Signature& sig);

}  // namespace accause

#endif
