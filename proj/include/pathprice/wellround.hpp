#pragma once

#include <utility>
#include <vector>

#include "pathprice/instance.hpp"
#include "pathprice/params.hpp"

namespace pathprice {

// Everything needed to lift a solution of the rounded instance back to the
// original one.
struct RoundingTrace {
  Rat scale;                              // lambda: scaled b_max becomes m/eps^2
  Rat epsilon;
  std::vector<int> discarded;             // original driver indices
  std::vector<int> kept;                  // original driver indices, ascending
  std::vector<long long> rounded_budgets; // per kept driver, floor(lambda*b_j)
  long long expansion = 1;                // m/eps^2 unit edges per original edge
  long long pad = 0;                      // per-guess dummy edges live in the solver
};

struct WellRoundedInstance {
  long long n_expanded = 0;  // n * expansion, no pads
  struct RDriver {
    long long left = 0, right = 0;  // expanded edge range
    long long budget = 0;           // integer
    int orig = -1;                  // index in the original instance
  };
  std::vector<RDriver> drivers;
  RoundingTrace trace;
  // origin_map[i] = expanded range [lo, hi] of original edge i (0-based index,
  // 1-based inclusive range).
  std::vector<std::pair<long long, long long>> origin_map;
  bool trivial = false;  // m == 0 or all budgets zero: solvers return zero weights

  // View as a HighwayInstance (integer budgets), for profit evaluation.
  HighwayInstance as_instance() const;
};

// The reduction chain of the preliminaries: scale budgets so the maximum
// becomes m/eps^2, discard scaled budgets below 1/eps, floor the rest, and
// replace each edge by m/eps^2 unit edges.  Power-of-gamma padding is owned
// by the solver (it depends on the guessed total).
WellRoundedInstance well_round(const HighwayInstance& inst, const EpsParam& eps);

// Original edge weight = (sum of weights on its expanded range) / lambda.
// Pad weights (anything past n_expanded) must be stripped by the caller.
WeightAssignment lift(const std::vector<long long>& w_expanded,
                      const WellRoundedInstance& wr,
                      const Rat& extra_scale = Rat(1));

}  // namespace pathprice
