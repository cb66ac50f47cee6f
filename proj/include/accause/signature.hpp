#ifndef ACCAUSE_SIGNATURE_HPP
#define ACCAUSE_SIGNATURE_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace accause {

using VarId = int;
using ValueId = int;

/// Raised when input text does not conform to one of the concrete grammars.
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& msg, std::size_t line, std::size_t column)
        : std::runtime_error(format(msg, line, column)), line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

  private:
    static std::string format(const std::string& msg, std::size_t line, std::size_t column) {
        return std::to_string(line) + ":" + std::to_string(column) + ": " + msg;
    }
    std::size_t line_;
    std::size_t column_;
};

/// Well-formed input that violates a semantic requirement (cyclic model,
/// signature mismatch, state-space cap, formula outside an evaluable fragment).
class SemanticError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class VarKind { Exogenous, Endogenous };

struct Variable {
    std::string name;
    VarKind kind = VarKind::Endogenous;
    std::vector<std::string> values;
};

/// Exogenous and endogenous variables with finite ranges. Exogenous variables
/// take ids 0..num_exogenous()-1, endogenous ones follow in declared order.
class Signature {
  public:
    Signature() = default;
    Signature(std::vector<Variable> exogenous, std::vector<Variable> endogenous);

    std::size_t size() const { return vars_.size(); }
    std::size_t num_exogenous() const { return num_exo_; }
    std::size_t num_endogenous() const { return vars_.size() - num_exo_; }

    const Variable& var(VarId id) const { return vars_.at(static_cast<std::size_t>(id)); }
    const std::string& name(VarId id) const { return var(id).name; }
    std::size_t range_size(VarId id) const { return var(id).values.size(); }
    const std::string& value_name(VarId id, ValueId v) const {
        return var(id).values.at(static_cast<std::size_t>(v));
    }
    bool is_exogenous(VarId id) const { return static_cast<std::size_t>(id) < num_exo_; }

    std::optional<VarId> find(std::string_view name) const;
    std::optional<ValueId> find_value(VarId id, std::string_view value) const;

    std::vector<VarId> exogenous_ids() const;
    std::vector<VarId> endogenous_ids() const;

    /// Number of total assignments; saturates at SIZE_MAX.
    std::size_t assignment_count() const;

    bool operator==(const Signature& other) const;

  private:
    std::vector<Variable> vars_;
    std::size_t num_exo_ = 0;
    std::unordered_map<std::string, VarId> by_name_;
};

/// Total assignment indexed by VarId.
using Assignment = std::vector<ValueId>;

/// Values of the exogenous variables, indexed by VarId (exogenous ids come first).
using Context = std::vector<ValueId>;

/// Steps `a` (restricted to `vars`) to the next assignment in lexicographic
/// order, first variable slowest. Returns false after the last one.
bool next_assignment(Assignment& a, const std::vector<VarId>& vars, const Signature& sig);

std::string assignment_to_string(const Assignment& a, const Signature& sig,
                                 const std::vector<VarId>& vars);

}  // namespace accause

#endif
