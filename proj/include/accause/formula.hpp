#ifndef ACCAUSE_FORMULA_HPP
#define ACCAUSE_FORMULA_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "accause/signature.hpp"

namespace accause {

/// Primitive event X=x. Exogenous variables are allowed; whether that is
/// meaningful depends on the evaluator.
struct Event {
    VarId var = 0;
    ValueId value = 0;

    bool operator==(const Event&) const = default;
    auto operator<=>(const Event&) const = default;
};

using Intervention = std::vector<Event>;

enum class FormulaKind { Event, Not, And, Or, Intervene, Counterfactual };

/// Immutable formula AST with shared subtrees. And/Or are n-ary: the empty
/// conjunction is `true` and the empty disjunction is `false`.
class Formula {
  public:
    static Formula event(Event e);
    static Formula event(VarId var, ValueId value) { return event(Event{var, value}); }
    static Formula negate(Formula f);
    /// A single-element list yields that element unchanged.
    static Formula conj(std::vector<Formula> parts);
    static Formula disj(std::vector<Formula> parts);
    static Formula conj(const std::vector<Event>& events);
    static Formula truth() { return conj(std::vector<Formula>{}); }
    static Formula falsity() { return disj(std::vector<Formula>{}); }
    static Formula intervene(Intervention assignments, Formula body);
    static Formula counterfactual(Formula antecedent, Formula consequent);

    FormulaKind kind() const { return node_->kind; }
    const Event& as_event() const { return node_->event; }
    const std::vector<Formula>& children() const { return node_->children; }
    const Formula& child(std::size_t i) const { return node_->children.at(i); }
    const Intervention& assignments() const { return node_->assignments; }

    bool is_true() const { return kind() == FormulaKind::And && children().empty(); }
    bool is_false() const { return kind() == FormulaKind::Or && children().empty(); }

    /// Structural equality.
    bool operator==(const Formula& other) const;

    const void* identity() const { return node_.get(); }

  private:
    struct Node {
        FormulaKind kind = FormulaKind::And;
        Event event;
        std::vector<Formula> children;
        Intervention assignments;
    };
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

/// Concrete syntax accepted by parse_formula; parse(to_string(f)) == f.
std::string to_string(const Formula& f, const Signature& sig);
std::string to_string(const Event& e, const Signature& sig);
std::string to_string(const Intervention& asg, const Signature& sig);

/// No Intervene or Counterfactual nodes.
bool is_propositional(const Formula& f);
bool contains_counterfactual(const Formula& f);
bool contains_intervention(const Formula& f);

/// If f is a conjunction of primitive events (or a single event), returns them.
std::optional<std::vector<Event>> as_event_conjunction(const Formula& f);

}  // namespace accause

#endif
