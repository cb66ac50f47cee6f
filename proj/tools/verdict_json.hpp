#ifndef ACCAUSE_TOOLS_VERDICT_JSON_HPP
#define ACCAUSE_TOOLS_VERDICT_JSON_HPP

#include <json.hpp>

#include "accause/abstract_cause.hpp"
#include "accause/correspondence.hpp"
#include "accause/explanation.hpp"
#include "accause/hp_cause.hpp"

namespace accause::cli {

using Json = nlohmann::ordered_json;

Json events_json(const std::vector<Event>& evs, const Signature& sig);
Json assignment_json(const Assignment& a, const Signature& sig, const std::vector<VarId>& vars);

Json to_json(const CauseVerdict& v, const Signature& sig);
Json to_json(const AbstractVerdict& v, const Signature& sig);
Json to_json(const ExplanationVerdict& v, const Signature& sig);
Json to_json(const CorrespondenceReport& r, const CfStructure& m2);

}  // namespace accause::cli

#endif
