#include "pathprice/report.hpp"

#include "pathprice/io.hpp"

namespace pathprice {

nlohmann::json report_to_json(const SolveReport& r, bool include_volatile) {
  nlohmann::json j;
  j["weights"] = nlohmann::json::array();
  for (const auto& w : r.weights.weights) j["weights"].push_back(rat_to_json(w));
  j["profit"] = rat_to_json(r.profit);
  j["satisfied"] = r.satisfied;
  j["trace"] = r.trace;
  j["diagnostics"] = r.diagnostics;
  j["config"] = r.config;
  if (include_volatile) j["volatile"] = r.volatile_info;
  return j;
}

std::string report_to_string(const SolveReport& r, bool include_volatile) {
  return report_to_json(r, include_volatile).dump(2);
}

}  // namespace pathprice
