#ifndef ACCAUSE_CAUSAL_MODEL_HPP
#define ACCAUSE_CAUSAL_MODEL_HPP

#include <optional>
#include <string>
#include <vector>

#include "accause/formula.hpp"

namespace accause {

/// One row of a guarded decision table.
struct EquationRow {
    Formula guard;
    ValueId value = 0;
};

/// F_X as an ordered decision table: the first row whose guard holds wins,
/// otherwise `fallback`. Guards are propositional over the other variables.
struct Equation {
    std::vector<EquationRow> rows;
    ValueId fallback = 0;

    ValueId evaluate(const Assignment& a) const;
    static Equation constant(ValueId v) { return Equation{{}, v}; }
};

/// Thrown when the dependency graph has a cycle; carries one cycle.
class CycleError : public SemanticError {
  public:
    CycleError(const std::string& msg, std::vector<VarId> cycle)
        : SemanticError(msg), cycle_(std::move(cycle)) {}
    const std::vector<VarId>& cycle() const { return cycle_; }

  private:
    std::vector<VarId> cycle_;
};

/// A recursive structural-equations model. Construction validates the
/// equations and derives the dependency graph; instances are immutable.
class CausalModel {
  public:
    /// `equations[i]` belongs to the i-th endogenous variable.
    CausalModel(std::string name, Signature sig, std::vector<Equation> equations);

    const std::string& name() const { return name_; }
    const Signature& signature() const { return sig_; }
    const Equation& equation(VarId endogenous) const;

    /// Variables Y depends on (exogenous and endogenous), ascending.
    const std::vector<VarId>& parents(VarId y) const;
    bool depends_on(VarId y, VarId x) const;

    /// Endogenous variables in a topological order of the dependency graph;
    /// ties broken by declaration order.
    const std::vector<VarId>& topological_order() const { return topo_; }

    /// Longest path from a source of the endogenous subgraph.
    int depth(VarId endogenous) const;

    /// Unique solution in context u, with the given equations replaced by
    /// constants. Later entries override earlier ones for the same variable.
    Assignment solve(const Context& u, const Intervention& intervention = {}) const;

    /// M_{X<-x}. Throws SemanticError on duplicates or exogenous targets.
    CausalModel intervene(const Intervention& asg) const;

    /// Number of contexts (product of exogenous ranges).
    std::size_t context_count() const;
    Context context_at(std::size_t index) const;
    std::size_t context_index(const Context& u) const;

  private:
    void compute_graph();

    std::string name_;
    Signature sig_;
    std::vector<Equation> eqs_;            // by endogenous position
    std::vector<std::vector<VarId>> parents_;  // by endogenous position
    std::vector<VarId> topo_;
    std::vector<int> depth_;
};

/// Validates acyclicity and returns the topological order (same as the
/// order stored in the model; re-derived from the equations).
std::vector<VarId> validate_recursive(const CausalModel& m);

/// Satisfaction for L_ex(S): primitive and exogenous events, booleans,
/// interventions, and counterfactuals whose antecedent is propositional
/// and whose consequent contains no counterfactual.
bool eval_causal(const CausalModel& m, const Context& u, const Formula& phi);

/// For phi ~> psi: the first value vector y (lexicographic over the
/// antecedent's endogenous variables) with phi & Y=y consistent and
/// [Y<-y]psi true; nullopt if none.
std::optional<Intervention> counterfactual_witness(const CausalModel& m, const Context& u,
                                                   const Formula& antecedent,
                                                   const Formula& consequent);

/// Rejects formulas outside L_ex(S) with SemanticError.
void check_causal_fragment(const Formula& phi);

// .cm model files

CausalModel parse_model(std::string_view text);
CausalModel load_model(const std::string& path);
std::string write_model(const CausalModel& m);

/// Graphviz rendering of the dependency graph.
std::string model_to_dot(const CausalModel& m);

/// "U=u11" (or a bare value when there is a single exogenous variable).
Context parse_context(std::string_view text, const Signature& sig);
std::string context_to_string(const Context& u, const Signature& sig);

}  // namespace accause

#endif
