#ifndef ACCAUSE_CF_STRUCTURE_HPP
#define ACCAUSE_CF_STRUCTURE_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "accause/formula.hpp"

namespace accause {

class CausalModel;

using StateId = int;
using Tiers = std::vector<std::vector<StateId>>;

/// Per-state closeness relation. t <=_s u reads "t is at least as close to s as u".
class Closeness {
  public:
    virtual ~Closeness() = default;

    virtual bool at_least_as_close(StateId s, StateId t, StateId u) const = 0;

    /// Total preorders expose their ranking as an ordered partition of all
    /// states (tier 0 first). Partial preorders return nullopt.
    virtual std::optional<Tiers> tiers(StateId s) const = 0;
};

/// Explicit ranked tiers per base state. States not listed for a base are
/// ordered by `fallback` when present, otherwise tied behind every listed state.
class TieredCloseness : public Closeness {
  public:
    TieredCloseness(std::size_t num_states, std::map<StateId, Tiers> explicit_tiers,
                    std::shared_ptr<const Closeness> fallback = nullptr);

    bool at_least_as_close(StateId s, StateId t, StateId u) const override;
    std::optional<Tiers> tiers(StateId s) const override;

    /// Tiers as written (tier 0 included) for one base state, if any.
    const Tiers* explicit_for(StateId s) const;
    const Closeness* fallback() const { return fallback_.get(); }

  private:
    std::size_t n_;
    std::map<StateId, Tiers> explicit_;
    std::shared_ptr<const Closeness> fallback_;
};

/// Lexicographic cost d_s(t); smaller is closer.
class CostCloseness : public Closeness {
  public:
    using Cost = std::vector<long long>;
    CostCloseness(std::size_t num_states, std::function<Cost(StateId, StateId)> cost)
        : n_(num_states), cost_(std::move(cost)) {}

    bool at_least_as_close(StateId s, StateId t, StateId u) const override {
        return cost_(s, t) <= cost_(s, u);
    }
    std::optional<Tiers> tiers(StateId s) const override;

  private:
    std::size_t n_;
    std::function<Cost(StateId, StateId)> cost_;
};

/// Arbitrary (possibly partial) preorder given by a comparator.
class ComparatorCloseness : public Closeness {
  public:
    explicit ComparatorCloseness(std::function<bool(StateId, StateId, StateId)> le)
        : le_(std::move(le)) {}
    bool at_least_as_close(StateId s, StateId t, StateId u) const override { return le_(s, t, u); }
    std::optional<Tiers> tiers(StateId) const override { return std::nullopt; }

  private:
    std::function<bool(StateId, StateId, StateId)> le_;
};

/// Finite Lewis-style counterfactual structure (W, R, pi).
class CfStructure {
  public:
    CfStructure(std::string name, Signature sig, std::vector<std::string> state_names,
                std::vector<Assignment> interp, std::shared_ptr<const Closeness> order);

    const std::string& name() const { return name_; }
    const Signature& signature() const { return sig_; }
    std::size_t size() const { return interp_.size(); }
    const Assignment& interp(StateId s) const { return interp_.at(static_cast<std::size_t>(s)); }
    const std::string& state_name(StateId s) const { return names_.at(static_cast<std::size_t>(s)); }
    std::optional<StateId> find_state(std::string_view name) const;
    std::optional<StateId> find_assignment(const Assignment& a) const;
    const Closeness& order() const { return *order_; }
    std::shared_ptr<const Closeness> order_ptr() const { return order_; }

  private:
    std::string name_;
    Signature sig_;
    std::vector<std::string> names_;
    std::vector<Assignment> interp_;
    std::shared_ptr<const Closeness> order_;
    std::unordered_map<std::string, StateId> by_name_;
    std::map<Assignment, StateId> by_assignment_;
};

struct StructureViolation {
    enum class Kind { Centering, Reflexivity, Transitivity, DuplicateRank, UnknownState };
    Kind kind;
    StateId base;
    StateId t;
    StateId u = -1;
    std::string message;
};

/// Checks reflexivity, transitivity and centering of every <=_s; returns the
/// first violation found, nullopt when the structure is well-formed.
std::optional<StructureViolation> validate_structure(const CfStructure& m);

/// Evaluates Intervene-free formulas with arbitrarily nested counterfactuals.
/// Caches the per-state rankings it computes; not thread-safe, cheap to create.
class CfEvaluator {
  public:
    explicit CfEvaluator(const CfStructure& m) : m_(m) {}

    bool eval(StateId s, const Formula& phi);
    std::vector<StateId> closest(StateId s, const Formula& phi);
    bool any_state(const Formula& phi);

    const CfStructure& structure() const { return m_; }

  private:
    const Tiers* tiers_for(StateId s);

    const CfStructure& m_;
    std::unordered_map<StateId, std::optional<Tiers>> tier_cache_;
    std::map<std::pair<const void*, StateId>, bool> cf_memo_;
    std::set<const void*> pinned_;
    std::vector<Formula> pinned_formulas_;
};

std::vector<StateId> closest_states(const CfStructure& m, StateId s, const Formula& phi);
bool eval_cf(const CfStructure& m, StateId s, const Formula& phi);

// .cfs files

/// Resolves "over MODELFILE" references and derived orders.
struct CfsLoadOptions {
    std::string base_dir;
    /// Used for "order derived weighted-violations" when no model file is named.
    const CausalModel* model = nullptr;
};

CfStructure parse_structure(std::string_view text, const CfsLoadOptions& opts = {});
CfStructure load_structure(const std::string& path, const CausalModel* model = nullptr);

/// Serializes states and orders. Derived orders are written as
/// "order derived weighted-violations"; comparator orders cannot be written.
std::string write_structure(const CfStructure& m, const std::string& model_ref);

}  // namespace accause

#endif
