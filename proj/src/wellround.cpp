#include "pathprice/wellround.hpp"

#include <algorithm>

#include "pathprice/errors.hpp"

namespace pathprice {

HighwayInstance WellRoundedInstance::as_instance() const {
  HighwayInstance inst;
  inst.n_edges = n_expanded;
  for (const auto& d : drivers) inst.drivers.push_back({d.left, d.right, Rat(d.budget)});
  return inst;
}

WellRoundedInstance well_round(const HighwayInstance& inst, const EpsParam& eps) {
  auto violations = validate(inst);
  if (!violations.empty()) throw InvalidInput("well_round: " + violations.front());

  long long m = static_cast<long long>(inst.drivers.size());
  WellRoundedInstance wr;
  wr.trace.epsilon = eps.eps;
  wr.trace.pad = 0;

  Rat b_max = 0;
  for (const auto& d : inst.drivers) b_max = std::max(b_max, d.budget);

  if (m == 0 || b_max == 0) {
    wr.trivial = true;
    wr.trace.scale = 1;
    wr.trace.expansion = 1;
    wr.n_expanded = inst.n_edges;
    for (long long e = 1; e <= inst.n_edges; ++e) wr.origin_map.push_back({e, e});
    return wr;
  }

  // expansion = m/eps^2 = 4*delta^2*m; lambda scales b_max onto it
  long long expansion = 4 * eps.delta * eps.delta * m;
  Rat lambda = Rat(expansion) / b_max;
  wr.trace.scale = lambda;
  wr.trace.expansion = expansion;
  wr.n_expanded = inst.n_edges * expansion;
  for (long long e = 1; e <= inst.n_edges; ++e)
    wr.origin_map.push_back({(e - 1) * expansion + 1, e * expansion});

  for (int j = 0; j < static_cast<int>(inst.drivers.size()); ++j) {
    const auto& d = inst.drivers[j];
    Rat scaled = lambda * d.budget;
    if (scaled < Rat(eps.inv_eps)) {
      wr.trace.discarded.push_back(j);
      continue;
    }
    wr.trace.kept.push_back(j);
    long long budget = to_i64(rat_floor(scaled));
    wr.trace.rounded_budgets.push_back(budget);
    WellRoundedInstance::RDriver rd;
    rd.left = (d.left - 1) * expansion + 1;
    rd.right = d.right * expansion;
    rd.budget = budget;
    rd.orig = j;
    wr.drivers.push_back(rd);
  }
  return wr;
}

WeightAssignment lift(const std::vector<long long>& w_expanded,
                      const WellRoundedInstance& wr, const Rat& extra_scale) {
  if (static_cast<long long>(w_expanded.size()) != wr.n_expanded)
    throw InvalidInput("lift: weight vector length does not match the expanded edge count");
  WeightAssignment out;
  out.weights.resize(wr.origin_map.size());
  for (std::size_t i = 0; i < wr.origin_map.size(); ++i) {
    long long total = 0;
    for (long long e = wr.origin_map[i].first; e <= wr.origin_map[i].second; ++e)
      total += w_expanded[static_cast<std::size_t>(e - 1)];
    out.weights[i] = Rat(total) * extra_scale / wr.trace.scale;
  }
  return out;
}

}  // namespace pathprice
