#include "accause/hp_cause.hpp"

#include <set>

#include "accause/propositional.hpp"

namespace accause {

void check_cause_conjunction(const std::vector<Event>& cause, const Signature& sig) {
    if (cause.empty()) throw SemanticError("cause must be a nonempty conjunction of primitive events");
    std::set<VarId> seen;
    for (const Event& e : cause) {
        if (e.var < 0 || static_cast<std::size_t>(e.var) >= sig.size()) {
            throw SemanticError("cause mentions an unknown variable");
        }
        if (sig.is_exogenous(e.var)) {
            throw SemanticError("cause mentions exogenous variable '" + sig.name(e.var) + "'");
        }
        if (e.value < 0 || static_cast<std::size_t>(e.value) >= sig.range_size(e.var)) {
            throw SemanticError("cause value out of range for '" + sig.name(e.var) + "'");
        }
        if (!seen.insert(e.var).second) {
            throw SemanticError("cause repeats variable '" + sig.name(e.var) + "'");
        }
    }
}

namespace {

// Calls fn(subset) for every subset of `pool` of size k, lexicographically.
template <typename Fn>
bool for_each_combination(const std::vector<VarId>& pool, std::size_t k, Fn fn) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    if (k > pool.size()) return false;
    std::vector<VarId> subset(k);
    while (true) {
        for (std::size_t i = 0; i < k; ++i) subset[i] = pool[idx[i]];
        if (fn(subset)) return true;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == pool.size() - k + i - 1) --i;
        if (i == 0) return false;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

}  // namespace

std::vector<HpWitness> hp_ac2_witnesses(const CausalModel& m, const Context& u,
                                        const std::vector<Event>& cause, const Formula& effect,
                                        bool first_only) {
    const Signature& sig = m.signature();
    const Assignment actual = m.solve(u);
    std::set<VarId> xvars;
    std::vector<VarId> xorder;
    for (const Event& e : cause) {
        xvars.insert(e.var);
        xorder.push_back(e.var);
    }
    std::vector<VarId> pool;
    for (VarId v : sig.endogenous_ids()) {
        if (!xvars.count(v)) pool.push_back(v);
    }

    std::vector<HpWitness> found;
    for (std::size_t k = 0; k <= pool.size(); ++k) {
        bool stop = for_each_combination(pool, k, [&](const std::vector<VarId>& w) {
            Intervention asg;
            std::vector<Event> fixed;
            for (VarId v : w) fixed.push_back(Event{v, actual[v]});
            Assignment xp(sig.size(), 0);
            do {
                bool same = true;
                for (const Event& e : cause) same = same && xp[e.var] == e.value;
                if (same) continue;
                asg.clear();
                for (VarId v : xorder) asg.push_back(Event{v, xp[v]});
                asg.insert(asg.end(), fixed.begin(), fixed.end());
                if (!eval_prop(effect, m.solve(u, asg))) {
                    HpWitness wit;
                    wit.fixed = fixed;
                    for (VarId v : xorder) wit.xprime.push_back(Event{v, xp[v]});
                    found.push_back(std::move(wit));
                    if (first_only) return true;
                }
            } while (next_assignment(xp, xorder, sig));
            return false;
        });
        if (stop) break;
    }
    return found;
}

CauseVerdict is_actual_cause_hp(const CausalModel& m, const Context& u,
                                const std::vector<Event>& cause, const Formula& effect,
                                const HpOptions& opts) {
    const Signature& sig = m.signature();
    check_cause_conjunction(cause, sig);
    if (!is_propositional(effect)) {
        throw SemanticError("HP effects must be Boolean combinations of primitive events");
    }
    CauseVerdict v;
    const Assignment actual = m.solve(u);
    v.ac1 = eval_prop(effect, actual);
    for (const Event& e : cause) v.ac1 = v.ac1 && actual[e.var] == e.value;

    v.witnesses = hp_ac2_witnesses(m, u, cause, effect, opts.first_only);
    v.ac2 = !v.witnesses.empty();

    // AC3: no strict nonempty sub-conjunction satisfies AC2. The empty one
    // never does: with x' = x and W fixed at actual values the effect stays true.
    v.ac3 = true;
    const std::size_t n = cause.size();
    for (std::size_t k = 1; k < n && v.ac3; ++k) {
        std::vector<VarId> positions;
        for (std::size_t i = 0; i < n; ++i) positions.push_back(static_cast<VarId>(i));
        for_each_combination(positions, k, [&](const std::vector<VarId>& pick) {
            std::vector<Event> sub;
            for (VarId i : pick) sub.push_back(cause[static_cast<std::size_t>(i)]);
            if (!hp_ac2_witnesses(m, u, sub, effect, true).empty()) {
                v.ac3 = false;
                v.ac3_violator = sub;
                return true;
            }
            return false;
        });
    }
    v.is_cause = v.ac1 && v.ac2 && v.ac3;
    return v;
}

}  // namespace accause
