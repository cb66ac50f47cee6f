#include "accause/propositional.hpp"

namespace accause {

bool eval_prop(const Formula& f, const Assignment& a) {
    switch (f.kind()) {
        case FormulaKind::Event:
            return a[f.as_event().var] == f.as_event().value;
        case FormulaKind::Not:
            return !eval_prop(f.child(0), a);
        case FormulaKind::And:
            for (const Formula& c : f.children()) {
                if (!eval_prop(c, a)) return false;
            }
            return true;
        case FormulaKind::Or:
            for (const Formula& c : f.children()) {
                if (eval_prop(c, a)) return true;
            }
            return false;
        case FormulaKind::Intervene:
        case FormulaKind::Counterfactual:
            break;
    }
    throw SemanticError("propositional formula expected");
}

namespace {

void collect(const Formula& f, std::set<VarId>& out) {
    switch (f.kind()) {
        case FormulaKind::Event:
            out.insert(f.as_event().var);
            return;
        case FormulaKind::Intervene:
        case FormulaKind::Counterfactual:
            throw SemanticError("propositional formula expected");
        default:
            for (const Formula& c : f.children()) collect(c, out);
    }
}

// True iff some assignment to `vars` (others irrelevant) satisfies `pred`.
template <typename Pred>
bool exists_assignment(const std::set<VarId>& vars, const Signature& sig, Pred pred) {
    std::vector<VarId> order(vars.begin(), vars.end());
    Assignment a(sig.size(), 0);
    do {
        if (pred(a)) return true;
    } while (next_assignment(a, order, sig));
    return false;
}

}  // namespace

std::set<VarId> mentioned_vars(const Formula& f) {
    std::set<VarId> out;
    collect(f, out);
    return out;
}

std::set<VarId> free_endogenous(const Formula& f, const Signature& sig) {
    std::set<VarId> out;
    for (VarId v : mentioned_vars(f)) {
        if (!sig.is_exogenous(v)) out.insert(v);
    }
    return out;
}

bool prop_consistent(const Formula& f, const Signature& sig) {
    return exists_assignment(mentioned_vars(f), sig,
                             [&](const Assignment& a) { return eval_prop(f, a); });
}

bool prop_entails(const Formula& phi, const Formula& psi, const Signature& sig) {
    std::set<VarId> vars = mentioned_vars(phi);
    vars.merge(mentioned_vars(psi));
    return !exists_assignment(vars, sig, [&](const Assignment& a) {
        return eval_prop(phi, a) && !eval_prop(psi, a);
    });
}

bool prop_valid(const Formula& f, const Signature& sig) {
    return prop_entails(Formula::truth(), f, sig);
}

bool prop_equivalent(const Formula& a, const Formula& b, const Signature& sig) {
    return prop_entails(a, b, sig) && prop_entails(b, a, sig);
}

}  // namespace accause
