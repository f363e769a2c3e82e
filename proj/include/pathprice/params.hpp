#pragma once

#include <optional>
#include <vector>

#include "pathprice/rational.hpp"

namespace pathprice {

// Admissible epsilon: 1/(2*eps) a positive integer, eps <= 1/2.
struct EpsParam {
  Rat eps;
  long long delta = 0;    // 1/(2*eps)
  long long inv_eps = 0;  // 1/eps = 2*delta
};

EpsParam make_eps(const Rat& eps);

// Solver parameters.  Without overrides gamma = (1/eps)^(1/eps) and the base
// weight set is {(1/eps)^y : y = 1..1/eps}.  Overrides decouple the DP shape
// from eps; they void the approximation guarantee and are flagged as such.
struct Params {
  EpsParam eps;
  long long gamma = 0;
  long long delta = 0;
  std::vector<long long> base_weights;  // the "y grid", ascending
  bool guarantee_void = false;
};

struct ParamOverrides {
  std::optional<long long> gamma;
  std::optional<long long> delta;
  std::optional<std::vector<long long>> base_weights;
};

Params make_params(const Rat& eps, const ParamOverrides& ov = {});

enum class SolveMode { Randomized, Derandomized };

}  // namespace pathprice
