#include "accause/correspondence.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "accause/propositional.hpp"

namespace accause {

Context exogenous_part(const Assignment& a, const Signature& sig) {
    return Context(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(sig.num_exogenous()));
}

std::vector<long long> violation_weights(const CausalModel& m) {
    const Signature& sig = m.signature();
    const long long n = static_cast<long long>(sig.num_endogenous());
    // The total is below (n+1)^(n+1), which must fit in 63 bits.
    __int128 bound = 1;
    for (long long i = 0; i <= n; ++i) {
        bound *= (n + 1);
        if (bound > static_cast<__int128>(std::numeric_limits<long long>::max())) {
            throw SemanticError("too many endogenous variables for the weighted-violation order");
        }
    }
    std::vector<long long> w;
    for (VarId y : sig.endogenous_ids()) {
        long long v = 1;
        for (long long i = 0; i < n - m.depth(y); ++i) v *= (n + 1);
        w.push_back(v);
    }
    return w;
}

WeightedViolationCloseness::WeightedViolationCloseness(const CausalModel& m, const std::vector<Assignment>& interp)
    : num_exo_(m.signature().num_exogenous()) {
    const Signature& sig = m.signature();
    std::vector<long long> w = violation_weights(m);
    auto endo = sig.endogenous_ids();
    exo_part_.reserve(interp.size());
    weight_.reserve(interp.size());
    for (const Assignment& a : interp) {
        exo_part_.push_back(exogenous_part(a, sig));
        long long total = 0;
        for (std::size_t i = 0; i < endo.size(); ++i) {
            if (m.equation(endo[i]).evaluate(a) != a[static_cast<std::size_t>(endo[i])]) total += w[i];
        }
        weight_.push_back(total);
    }
}

WeightedViolationCloseness::Cost WeightedViolationCloseness::cost(StateId s, StateId t) const {
    if (s == t) return Cost{0, 0, 0};
    const Context& a = exo_part_[static_cast<std::size_t>(s)];
    const Context& b = exo_part_[static_cast<std::size_t>(t)];
    int diff = 0;
    for (std::size_t i = 0; i < num_exo_; ++i) diff += a[i] != b[i];
    return Cost{1, diff, weight_[static_cast<std::size_t>(t)]};
}

bool WeightedViolationCloseness::at_least_as_close(StateId s, StateId t, StateId u) const {
    return cost(s, t) <= cost(s, u);
}

std::optional<Tiers> WeightedViolationCloseness::tiers(StateId s) const {
    std::vector<std::pair<Cost, StateId>> keyed;
    keyed.reserve(weight_.size());
    for (std::size_t t = 0; t < weight_.size(); ++t) {
        keyed.emplace_back(cost(s, static_cast<StateId>(t)), static_cast<StateId>(t));
    }
    std::sort(keyed.begin(), keyed.end());
    Tiers out;
    for (std::size_t i = 0; i < keyed.size(); ++i) {
        if (i == 0 || keyed[i].first != keyed[i - 1].first) out.emplace_back();
        out.back().push_back(keyed[i].second);
    }
    return out;
}

namespace {

std::size_t assignment_index(const Assignment& a, const Signature& sig) {
    std::size_t idx = 0;
    for (std::size_t v = 0; v < a.size(); ++v) {
        idx = idx * sig.range_size(static_cast<VarId>(v)) + static_cast<std::size_t>(a[v]);
    }
    return idx;
}

}  // namespace

Counterpart build_counterpart(const CausalModel& m, std::size_t cap) {
    const Signature& sig = m.signature();
    std::size_t count = sig.assignment_count();
    if (count > cap) {
        throw SemanticError("counterpart would have " + std::to_string(count) + " states, above the cap of " +
                            std::to_string(cap));
    }
    std::vector<VarId> all;
    for (std::size_t v = 0; v < sig.size(); ++v) all.push_back(static_cast<VarId>(v));
    std::vector<Assignment> interp;
    std::vector<std::string> names;
    interp.reserve(count);
    names.reserve(count);
    Assignment a(sig.size(), 0);
    do {
        names.push_back("s" + std::to_string(interp.size()));
        interp.push_back(a);
    } while (next_assignment(a, all, sig));

    auto order = std::make_shared<WeightedViolationCloseness>(m, interp);
    std::vector<StateId> ctx(m.context_count());
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        ctx[i] = static_cast<StateId>(assignment_index(m.solve(m.context_at(i)), sig));
    }
    return Counterpart{CfStructure(m.name() + "_cf", sig, std::move(names), std::move(interp), std::move(order)),
                       std::move(ctx)};
}

namespace {

class Ranking {
  public:
    Ranking(const CfStructure& m2, StateId s) : m2_(m2), s_(s) {
        if (auto tiers = m2.order().tiers(s)) {
            rank_.assign(m2.size(), std::numeric_limits<std::size_t>::max());
            for (std::size_t i = 0; i < tiers->size(); ++i) {
                for (StateId t : (*tiers)[i]) rank_[static_cast<std::size_t>(t)] = i;
            }
            tiers_ = std::move(*tiers);
        }
    }

    bool total() const { return !rank_.empty(); }
    const Tiers& tiers() const { return tiers_; }

    std::vector<StateId> minimal(const std::vector<StateId>& cands) const {
        std::vector<StateId> out;
        if (total()) {
            std::size_t best = std::numeric_limits<std::size_t>::max();
            for (StateId t : cands) best = std::min(best, rank_[static_cast<std::size_t>(t)]);
            for (StateId t : cands) {
                if (rank_[static_cast<std::size_t>(t)] == best) out.push_back(t);
            }
            return out;
        }
        const Closeness& o = m2_.order();
        for (StateId t : cands) {
            bool dominated = false;
            for (StateId u : cands) {
                if (o.at_least_as_close(s_, u, t) && !o.at_least_as_close(s_, t, u)) {
                    dominated = true;
                    break;
                }
            }
            if (!dominated) out.push_back(t);
        }
        return out;
    }

  private:
    const CfStructure& m2_;
    StateId s_;
    std::vector<std::size_t> rank_;
    Tiers tiers_;
};

struct EndoCoding {
    std::vector<VarId> vars;
    std::vector<std::size_t> mult;
    std::size_t count = 1;

    explicit EndoCoding(const Signature& sig) : vars(sig.endogenous_ids()) {
        for (VarId v : vars) {
            mult.push_back(count);
            count *= sig.range_size(v) + 1;
        }
    }

    void satisfied(const Assignment& a, std::vector<std::size_t>& out) const {
        out.assign(1, 0);
        for (std::size_t i = 0; i < vars.size(); ++i) {
            std::size_t add = (static_cast<std::size_t>(a[static_cast<std::size_t>(vars[i])]) + 1) * mult[i];
            std::size_t n = out.size();
            for (std::size_t k = 0; k < n; ++k) out.push_back(out[k] + add);
        }
    }

    Formula formula(std::size_t code) const {
        std::vector<Event> evs;
        std::size_t rest = code;
        std::vector<std::size_t> digits(vars.size());
        for (std::size_t i = vars.size(); i-- > 0;) {
            digits[i] = rest / mult[i];
            rest %= mult[i];
        }
        for (std::size_t i = 0; i < vars.size(); ++i) {
            if (digits[i] > 0) evs.push_back(Event{vars[i], static_cast<ValueId>(digits[i] - 1)});
        }
        return Formula::conj(evs);
    }
};

}  // namespace

CorrespondenceReport check_correspondence(const CfStructure& m2, const CausalModel& m,
                                          const CorrespondenceOptions& opts) {
    const Signature& sig = m.signature();
    if (!(m2.signature() == sig)) throw SemanticError("structure and model have different signatures");
    CorrespondenceReport rep;
    rep.strong = opts.strong;
    rep.strict = opts.strict;
    const std::size_t n = m2.size();

    // Condition (a): groups of states sharing W_Y = s_Y, per endogenous Y.
    auto endo = sig.endogenous_ids();
    std::vector<std::map<Assignment, std::vector<StateId>>> groups(endo.size());
    std::vector<std::vector<char>> violates(endo.size(), std::vector<char>(n, 0));
    for (std::size_t i = 0; i < endo.size(); ++i) {
        std::size_t y = static_cast<std::size_t>(endo[i]);
        for (std::size_t t = 0; t < n; ++t) {
            Assignment key = m2.interp(static_cast<StateId>(t));
            violates[i][t] = m.equation(endo[i]).evaluate(key) != key[y];
            key[y] = -1;
            groups[i][key].push_back(static_cast<StateId>(t));
        }
    }

    EndoCoding coding(sig);
    const bool do_pairs = coding.count - 1 <= opts.max_pair_conjunctions;
    rep.pairs_skipped = opts.strong && !do_pairs;
    if (opts.strong) {
        std::size_t c = coding.count - 1;
        rep.checked_psi_count = c + (do_pairs ? c * (c - 1) / 2 : 0) + opts.extra_psi.size();
    }
    for (const Formula& psi : opts.extra_psi) {
        if (!is_propositional(psi)) throw SemanticError("condition (c) formulas must be propositional");
    }

    std::vector<std::size_t> stamp(coding.count, std::numeric_limits<std::size_t>::max());
    std::vector<std::size_t> min_rank(coding.count, 0);
    std::vector<StateId> viol(coding.count, -1);
    std::vector<std::size_t> codes;
    CfEvaluator ev(m2);

    for (std::size_t si = 0; si < n; ++si) {
        StateId s = static_cast<StateId>(si);
        Ranking rank(m2, s);
        if (rep.condition_a) {
            for (std::size_t i = 0; i < endo.size() && rep.condition_a; ++i) {
                std::size_t y = static_cast<std::size_t>(endo[i]);
                Assignment own = m2.interp(s);
                own[y] = -1;
                for (const auto& [key, members] : groups[i]) {
                    if (!opts.strict && key == own && violates[i][si]) continue;
                    for (StateId t : rank.minimal(members)) {
                        if (violates[i][static_cast<std::size_t>(t)]) {
                            rep.condition_a = false;
                            rep.a_failure = ConditionAFailure{endo[i], key, s, t};
                            break;
                        }
                    }
                    if (!rep.condition_a) break;
                }
            }
        }
        if (!opts.strong || !rep.condition_c) continue;

        const Context u = exogenous_part(m2.interp(s), sig);
        auto moved = [&](StateId t) { return exogenous_part(m2.interp(t), sig) != u; };
        auto fail_c = [&](Formula psi, StateId t) {
            rep.condition_c = false;
            rep.c_failure = ConditionCFailure{s, std::move(psi), t};
        };

        if (rank.total()) {
            const Tiers& tiers = rank.tiers();
            for (std::size_t r = 0; r < tiers.size(); ++r) {
                for (StateId t : tiers[r]) {
                    coding.satisfied(m2.interp(t), codes);
                    bool mv = moved(t);
                    for (std::size_t c : codes) {
                        if (stamp[c] != si) {
                            stamp[c] = si;
                            min_rank[c] = r;
                            viol[c] = mv ? t : -1;
                        } else if (min_rank[c] == r && viol[c] == -1 && mv) {
                            viol[c] = t;
                        }
                    }
                }
            }
            for (std::size_t c = 1; c < coding.count && rep.condition_c; ++c) {
                if (stamp[c] == si && viol[c] != -1) fail_c(coding.formula(c), viol[c]);
            }
            if (do_pairs) {
                for (std::size_t c1 = 1; c1 < coding.count && rep.condition_c; ++c1) {
                    for (std::size_t c2 = c1 + 1; c2 < coding.count; ++c2) {
                        bool h1 = stamp[c1] == si, h2 = stamp[c2] == si;
                        if (!h1 && !h2) continue;
                        std::size_t r = std::min(h1 ? min_rank[c1] : std::numeric_limits<std::size_t>::max(),
                                                 h2 ? min_rank[c2] : std::numeric_limits<std::size_t>::max());
                        StateId bad = -1;
                        if (h1 && min_rank[c1] == r && viol[c1] != -1) bad = viol[c1];
                        if (bad == -1 && h2 && min_rank[c2] == r && viol[c2] != -1) bad = viol[c2];
                        if (bad != -1) {
                            fail_c(Formula::disj({coding.formula(c1), coding.formula(c2)}), bad);
                            break;
                        }
                    }
                }
            }
        } else {
            auto check = [&](const Formula& psi) {
                for (StateId t : ev.closest(s, psi)) {
                    if (moved(t)) {
                        fail_c(psi, t);
                        return;
                    }
                }
            };
            for (std::size_t c1 = 1; c1 < coding.count && rep.condition_c; ++c1) {
                check(coding.formula(c1));
                if (!do_pairs) continue;
                for (std::size_t c2 = c1 + 1; c2 < coding.count && rep.condition_c; ++c2) {
                    check(Formula::disj({coding.formula(c1), coding.formula(c2)}));
                }
            }
        }
        for (const Formula& psi : opts.extra_psi) {
            if (!rep.condition_c) break;
            std::vector<Event> pin;
            for (VarId x : sig.exogenous_ids()) pin.push_back(Event{x, u[static_cast<std::size_t>(x)]});
            if (!prop_consistent(Formula::conj({Formula::conj(pin), psi}), sig)) continue;
            for (StateId t : ev.closest(s, psi)) {
                if (moved(t)) {
                    fail_c(psi, t);
                    break;
                }
            }
        }
    }

    if (opts.strong) {
        std::vector<VarId> all;
        for (std::size_t v = 0; v < sig.size(); ++v) all.push_back(static_cast<VarId>(v));
        Assignment a(sig.size(), 0);
        do {
            if (!m2.find_assignment(a)) {
                rep.condition_b = false;
                rep.b_missing = a;
                break;
            }
        } while (next_assignment(a, all, sig));
    }
    return rep;
}

bool strongly_consistent(const CorrespondenceReport& report, const CfStructure& m2, StateId s, const Context& u) {
    if (!report.strong || !report.strongly_corresponds()) return false;
    return exogenous_part(m2.interp(s), m2.signature()) == u;
}

bool strongly_consistent(const CfStructure& m2, StateId s, const CausalModel& m, const Context& u) {
    return strongly_consistent(check_correspondence(m2, m), m2, s, u);
}

bool compatible(const CorrespondenceReport& report, const CausalModel& m, const CfStructure& m2) {
    if (!report.strong || !report.strongly_corresponds()) return false;
    std::vector<char> covered(m.context_count(), 0);
    for (std::size_t s = 0; s < m2.size(); ++s) {
        covered[m.context_index(exogenous_part(m2.interp(static_cast<StateId>(s)), m2.signature()))] = 1;
    }
    return std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
}

bool compatible(const CausalModel& m, const CfStructure& m2) {
    return compatible(check_correspondence(m2, m), m, m2);
}

bool compatible_K(const CorrespondenceReport& report, const CfStructure& m2, const std::vector<Context>& K,
                  const std::vector<StateId>& K2) {
    for (const Context& u : K) {
        bool found = std::any_of(K2.begin(), K2.end(),
                                 [&](StateId s) { return strongly_consistent(report, m2, s, u); });
        if (!found) return false;
    }
    for (StateId s : K2) {
        bool found = std::any_of(K.begin(), K.end(),
                                 [&](const Context& u) { return strongly_consistent(report, m2, s, u); });
        if (!found) return false;
    }
    return true;
}

bool compatible_K(const CausalModel& m, const CfStructure& m2, const std::vector<Context>& K,
                  const std::vector<StateId>& K2) {
    return compatible_K(check_correspondence(m2, m), m2, K, K2);
}

}  // namespace accause
