#pragma once

#include <cstdint>
#include <vector>

#include "pathprice/linedp.hpp"
#include "pathprice/params.hpp"
#include "pathprice/report.hpp"
#include "pathprice/wellround.hpp"

namespace pathprice {

// The bounding phase output: the well-rounded highway enclosed in a bounding
// path, [x left pad][expanded edges][W* * gamma dummies][B2 right pad].
struct BoundedLine {
  LineProblem line;
  long long w_star = 0;   // gamma^ell
  long long ell = 0;
  long long x = 0;        // 1..W*
  long long y = 0;        // 1..(number of base weights)
  long long base_w = 0;   // (1/eps)^y
  long long w_prime = 0;  // W* * base_w
  long long left_pad = 0;
  long long right_pad = 0;  // W*gamma dummies plus the B2 tail
};

BoundedLine bound(const WellRoundedInstance& wr, long long w_star, long long x,
                  long long y, const Params& p);

struct HighwayOptions {
  Params params;
  SolveMode mode = SolveMode::Derandomized;
  std::uint64_t seed = 1;
  bool compressed = true;
  bool audit = false;  // include per-draw driver records in the diagnostics
};

// Highway PTAS: well-round, guess W*, bound, two-level DP, reconstruct,
// scale by delta/(delta+2), lift, evaluate.  Returns the best true profit
// across all guesses and draws.  Deterministic given (mode, seed).
SolveReport run_hptas(const HighwayInstance& inst, const HighwayOptions& opt);

// Smallest power of gamma >= max(raw_total, 1).
long long padded_power(long long gamma, long long raw_total);

// phi(G0, W') for one (W*, x, y), on the same bounded line run_hptas uses.
DpVal hptas_root_value(const WellRoundedInstance& wr, long long w_star,
                       long long x, long long y, const Params& p,
                       bool compressed = true);

// The oracle-guided dissection value apx_O: splits every path at the exact
// W/gamma fraction points of the optimal weights (first edge position
// reaching each cumulative multiple), credits good drivers from the oracle's
// satisfied set, and brute-forces the base level.
//
// `w_orig` holds the oracle's integer optimal weights per ORIGINAL edge of
// the rounded instance (the expansion is uniform, so block-granular weights
// are fully general); `satisfied` indexes into wr.drivers.
long long optimal_dissection_value(const WellRoundedInstance& wr,
                                   const std::vector<long long>& w_orig,
                                   const std::vector<int>& satisfied,
                                   long long x, long long y, const Params& p);

}  // namespace pathprice
