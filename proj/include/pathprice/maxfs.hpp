#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pathprice/linedp.hpp"
#include "pathprice/params.hpp"
#include "pathprice/report.hpp"

namespace pathprice {

// Row of an interval system: lower <= sum of w over [left,right] <= upper.
struct MaxFSRow {
  long long left = 0, right = 0;  // 1-based, inclusive
  long long lower = 0, upper = 0; // integers, 0 <= lower <= upper
  Rat profit;                     // non-negative
};

struct MaxFSInstance {
  long long n = 0;  // columns / edges
  std::vector<MaxFSRow> rows;
};

std::vector<std::string> validate(const MaxFSInstance& inst);

// Profit rounding: scale by (m/eps)/v_max, floor, drop zero rows, replicate
// each row v_j times with unit profit.
struct ReducedMaxFS {
  MaxFSInstance unit;                 // replicated unit-profit rows
  std::vector<int> row_of;            // unit row -> original row index
  std::vector<long long> int_profit;  // per original row (0 = dropped)
  Rat profit_scale;
  bool trivial = false;  // all profits zero
};
ReducedMaxFS reduce_weights(const MaxFSInstance& inst, const EpsParam& eps);

// Duplication by gamma*ell*m plus driver-free pads at both ends.  The pad
// length is at least gamma*ell*m per side (pad_extra adds room so that the
// analysis dissection of any optimal solution is realizable at edge
// granularity; weight on pads is dropped when mapping back).
struct WellRoundedMaxFS {
  LineProblem line;  // driver tags = unit row indices
  long long dup = 1;
  long long pad = 0;  // per side
  long long n_orig = 0;
  std::vector<std::pair<long long, long long>> origin_map;  // per original edge
};
WellRoundedMaxFS well_round_maxfs(const MaxFSInstance& unit, const Params& p,
                                  long long ell, long long pad_extra = 0);

struct MaxFSOptions {
  Params params;
  SolveMode mode = SolveMode::Derandomized;
  std::uint64_t seed = 1;
  bool compressed = true;
  bool audit = false;
};

struct MaxFSResult {
  WeightAssignment weights;    // pre-finalization, satisfies the relaxed bounds
  WeightAssignment finalized;  // weights * (delta+2)/delta
  std::vector<int> rows;       // J, original row indices, ascending
  Rat weighted_count;          // sum of original profits over J
  Rat violation_factor;        // ((delta+2)/delta)^2
  std::vector<Rat> achieved;   // per original row: a_j^T w (pre-finalization)
  SolveReport report;
};

// Randomized-dissection PTAS with (1+O(eps)) bound violation.  The all-zero assignment is
// always a candidate, so instances with all lower bounds zero return w = 0
// with every row selected.
MaxFSResult run_maxfs(const MaxFSInstance& inst, const MaxFSOptions& opt);

// phi(G0, W') for one guess (W* = gamma^ell) and one y, on the same line
// run_maxfs uses.
DpVal maxfs_root_value(const MaxFSInstance& inst, const Params& p,
                       long long w_star, long long y, bool compressed = true);

// Count of oracle-satisfied unit drivers that are good and approximately
// satisfied under the dissection induced by the oracle's optimal weights,
// with the pad split x; the derandomized form of the E[phi] lower bound.
long long maxfs_dissection_count(const MaxFSInstance& inst, const Params& p,
                                 const std::vector<long long>& w_orig,
                                 const std::vector<int>& oracle_rows,
                                 long long w_star, long long x, long long y);

}  // namespace pathprice
