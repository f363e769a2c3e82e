#include "pathprice/params.hpp"

#include <algorithm>

#include "pathprice/errors.hpp"

namespace pathprice {

namespace {

// Derived constants explode quickly (gamma = 256 at eps = 1/4, 16^16 at
// eps = 1/16); anything past this cap cannot participate in a runnable DP.
constexpr long long kGammaCap = 1'000'000;

}  // namespace

EpsParam make_eps(const Rat& eps) {
  if (eps <= 0 || eps > Rat(1, 2))
    throw InvalidParameter("epsilon must satisfy 0 < epsilon <= 1/2");
  Rat half_inv = Rat(1) / (Rat(2) * eps);
  if (denominator(half_inv) != 1)
    throw InvalidParameter("epsilon must satisfy 1/(2*epsilon) in Z (e.g. 1/2, 1/4, 1/6)");
  EpsParam p;
  p.eps = eps;
  p.delta = to_i64(numerator(half_inv));
  p.inv_eps = 2 * p.delta;
  return p;
}

Params make_params(const Rat& eps, const ParamOverrides& ov) {
  Params p;
  p.eps = make_eps(eps);
  p.guarantee_void = ov.gamma.has_value() || ov.delta.has_value() || ov.base_weights.has_value();

  if (ov.delta) {
    if (*ov.delta < 1) throw InvalidParameter("delta override must be >= 1");
    p.delta = *ov.delta;
  } else {
    p.delta = p.eps.delta;
  }

  if (ov.gamma) {
    if (*ov.gamma < 2) throw InvalidParameter("gamma override must be >= 2");
    p.gamma = *ov.gamma;
  } else {
    Int g = 1;
    for (long long i = 0; i < p.eps.inv_eps; ++i) {
      g *= p.eps.inv_eps;
      if (g > kGammaCap)
        throw InvalidParameter(
            "derived gamma = (1/eps)^(1/eps) exceeds the runnable range; "
            "use a gamma override or a larger epsilon");
    }
    p.gamma = to_i64(g);
  }

  if (ov.base_weights) {
    if (ov.base_weights->empty())
      throw InvalidParameter("base weight override must be non-empty");
    for (auto w : *ov.base_weights)
      if (w < 1) throw InvalidParameter("base weights must be positive");
    if (!std::is_sorted(ov.base_weights->begin(), ov.base_weights->end()))
      throw InvalidParameter("base weights must be ascending");
    p.base_weights = *ov.base_weights;
  } else {
    Int w = 1;
    for (long long y = 1; y <= p.eps.inv_eps; ++y) {
      w *= p.eps.inv_eps;
      if (w > kGammaCap)
        throw InvalidParameter(
            "derived base weight (1/eps)^y exceeds the runnable range; "
            "use a base weight override or a larger epsilon");
      p.base_weights.push_back(to_i64(w));
    }
  }
  return p;
}

}  // namespace pathprice
