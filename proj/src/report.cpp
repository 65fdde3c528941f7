#include "ffzeta/report.hpp"

namespace ffz {

nlohmann::json to_json(const IdentityReport& r) {
  nlohmann::json j;
  j["identity"] = r.identity;
  j["params"] = r.params;
  j["pass"] = r.pass;
  j["witness"] = r.witness ? nlohmann::json(*r.witness) : nlohmann::json(nullptr);
  j["certified_precision_exponent"] =
      r.certified_precision_exponent ? nlohmann::json(*r.certified_precision_exponent) : nlohmann::json(nullptr);
  j["tail_bound_exponent"] =
      r.tail_bound_exponent ? nlohmann::json(*r.tail_bound_exponent) : nlohmann::json(nullptr);
  j["millis"] = r.millis;
  if (!r.details.empty()) j["details"] = r.details;
  return j;
}

}  // namespace ffz
