#pragma once

#include <vector>

#include "pathprice/instance.hpp"
#include "pathprice/maxfs.hpp"
#include "pathprice/tollbooth.hpp"

namespace pathprice {

// Hard caps beyond which the oracles refuse (never silently truncate).
// Defaults are sized so a run finishes in seconds.
struct OracleBounds {
  long long max_edges = 6;
  long long max_drivers = 10;
  long long max_budget = 64;           // also caps l_max for MaxFS
  long long max_states = 50'000'000;   // enumeration / sweep state budget
};

struct HighwayOracleResult {
  Rat opt;
  std::vector<long long> weights;  // lexicographically least maximizer
  std::vector<int> satisfied;
};

// Exhaustive search over integer w in {0..floor(b_max)}^n (integral optima
// exist by total unimodularity; no weight above the largest budget helps).
HighwayOracleResult exact_highway_bruteforce(const HighwayInstance& inst,
                                             const OracleBounds& b = {});

// Independent second oracle: left-to-right DP whose state is the vector of
// accumulated weights of open drivers, capped at budget+1 (overflow state).
Rat exact_highway_sweep(const HighwayInstance& inst, const OracleBounds& b = {});

struct MaxFSOracleResult {
  Rat opt_weight;
  std::vector<int> rows;     // max-weight feasible subset, tie: lex least
  std::vector<Rat> witness;  // feasible w for those rows
};

// Subset enumeration by decreasing weight; feasibility of a subset via a
// difference-constraint system over monotone prefix sums (negative-cycle
// detection), which also yields the witness.  rho >= 1 relaxes the bounds to
// [l/rho, rho*u].
MaxFSOracleResult exact_maxfs(const MaxFSInstance& inst, const OracleBounds& b = {},
                              const Rat& rho = Rat(1));

struct TreeOracleResult {
  Rat opt;
  std::vector<long long> weights;  // per edge, in instance edge order
  std::vector<int> satisfied;
};

TreeOracleResult exact_tollbooth(const TreeInstance& inst,
                                 const OracleBounds& b = {});

}  // namespace pathprice
