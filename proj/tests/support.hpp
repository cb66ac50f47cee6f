#ifndef ACCAUSE_TESTS_SUPPORT_HPP
#define ACCAUSE_TESTS_SUPPORT_HPP

#include <string>

#include "accause/causal_model.hpp"
#include "accause/cf_structure.hpp"
#include "accause/parser.hpp"

namespace testing {

inline std::string data_path(const std::string& file) { return std::string(ACCAUSE_DATA_DIR) + "/" + file; }

inline accause::CausalModel model(const std::string& file) { return accause::load_model(data_path(file)); }

inline accause::CfStructure structure(const std::string& file) { return accause::load_structure(data_path(file)); }

inline accause::Formula f(const std::string& text, const accause::Signature& sig) {
    return accause::parse_formula(text, sig);
}

inline std::vector<accause::Event> evs(const std::string& text, const accause::Signature& sig) {
    return accause::parse_event_list(text, sig);
}

/// Every total assignment of the signature, first variable slowest.
inline std::vector<accause::Assignment> all_assignments(const accause::Signature& sig) {
    std::vector<accause::VarId> vars;
    for (accause::VarId v = 0; v < static_cast<accause::VarId>(sig.size()); ++v) vars.push_back(v);
    std::vector<accause::Assignment> out;
    accause::Assignment a(sig.size(), 0);
    do {
        out.push_back(a);
    } while (accause::next_assignment(a, vars, sig));
    return out;
}

}  // namespace testing

#endif
