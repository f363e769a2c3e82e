#pragma once

#include <json.hpp>

#include <string>

#include "pathprice/instance.hpp"

namespace pathprice {

// Uniform result record for all solvers.  Everything except `volatile_info`
// is byte-reproducible for a fixed config; timestamps and wall times are
// quarantined in the volatile sub-object.
struct SolveReport {
  WeightAssignment weights;   // on the ORIGINAL instance
  Rat profit;                 // exact; equals profit(instance, weights)
  std::vector<int> satisfied; // driver indices with w(D_j) <= b_j
  nlohmann::json trace;       // rounding trace
  nlohmann::json diagnostics; // per-guess / per-draw records
  nlohmann::json config;      // run configuration (filled by the CLI)
  nlohmann::json volatile_info;
};

nlohmann::json report_to_json(const SolveReport& r, bool include_volatile = true);
std::string report_to_string(const SolveReport& r, bool include_volatile = true);

}  // namespace pathprice
