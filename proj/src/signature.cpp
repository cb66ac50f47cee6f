#include "accause/signature.hpp"

#include <limits>
#include <set>

namespace accause {

Signature::Signature(std::vector<Variable> exogenous, std::vector<Variable> endogenous) {
    if (endogenous.empty()) {
        throw SemanticError("signature needs at least one endogenous variable");
    }
    num_exo_ = exogenous.size();
    for (auto& v : exogenous) {
        v.kind = VarKind::Exogenous;
        vars_.push_back(std::move(v));
    }
    for (auto& v : endogenous) {
        v.kind = VarKind::Endogenous;
        vars_.push_back(std::move(v));
    }
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        const Variable& v = vars_[i];
        if (v.values.empty()) {
            throw SemanticError("variable '" + v.name + "' has an empty range");
        }
        std::set<std::string> seen(v.values.begin(), v.values.end());
        if (seen.size() != v.values.size()) {
            throw SemanticError("variable '" + v.name + "' lists a value twice");
        }
        if (!by_name_.emplace(v.name, static_cast<VarId>(i)).second) {
            throw SemanticError("variable '" + v.name + "' declared twice");
        }
    }
}

std::optional<VarId> Signature::find(std::string_view name) const {
    auto it = by_name_.find(std::string(name));
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

std::optional<ValueId> Signature::find_value(VarId id, std::string_view value) const {
    const auto& vals = var(id).values;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (vals[i] == value) return static_cast<ValueId>(i);
    }
    return std::nullopt;
}

std::vector<VarId> Signature::exogenous_ids() const {
    std::vector<VarId> ids;
    for (std::size_t i = 0; i < num_exo_; ++i) ids.push_back(static_cast<VarId>(i));
    return ids;
}

std::vector<VarId> Signature::endogenous_ids() const {
    std::vector<VarId> ids;
    for (std::size_t i = num_exo_; i < vars_.size(); ++i) ids.push_back(static_cast<VarId>(i));
    return ids;
}

std::size_t Signature::assignment_count() const {
    std::size_t n = 1;
    for (const auto& v : vars_) {
        if (n > std::numeric_limits<std::size_t>::max() / v.values.size()) {
            return std::numeric_limits<std::size_t>::max();
        }
        n *= v.values.size();
    }
    return n;
}

bool Signature::operator==(const Signature& other) const {
    if (num_exo_ != other.num_exo_ || vars_.size() != other.vars_.size()) return false;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (vars_[i].name != other.vars_[i].name || vars_[i].values != other.vars_[i].values) {
            return false;
        }
    }
    return true;
}

bool next_assignment(Assignment& a, const std::vector<VarId>& vars, const Signature& sig) {
    for (std::size_t i = vars.size(); i-- > 0;) {
        VarId v = vars[i];
        if (static_cast<std::size_t>(++a[v]) < sig.range_size(v)) return true;
        a[v] = 0;
    }
    return false;
}

std::string assignment_to_string(const Assignment& a, const Signature& sig,
                                 const std::vector<VarId>& vars) {
    std::string out;
    for (VarId v : vars) {
        if (!out.empty()) out += ", ";
        out += sig.name(v) + "=" + sig.value_name(v, a[v]);
    }
    return out;
}

}  // namespace accause
