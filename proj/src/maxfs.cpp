#include "pathprice/maxfs.hpp"

#include <algorithm>
#include <set>

#include "pathprice/dissection.hpp"
#include "pathprice/errors.hpp"
#include "pathprice/instance.hpp"
#include "pathprice/io.hpp"

namespace pathprice {

std::vector<std::string> validate(const MaxFSInstance& inst) {
  std::vector<std::string> out;
  if (inst.n < 0) out.push_back("column count must be non-negative");
  for (std::size_t j = 0; j < inst.rows.size(); ++j) {
    const auto& r = inst.rows[j];
    std::string who = "row " + std::to_string(j);
    if (r.left < 1 || r.left > r.right || r.right > inst.n)
      out.push_back(who + ": interval out of range");
    if (r.lower < 0 || r.lower > r.upper) out.push_back(who + ": bounds must satisfy 0 <= lower <= upper");
    if (r.profit < 0) out.push_back(who + ": profit must be non-negative");
  }
  return out;
}

ReducedMaxFS reduce_weights(const MaxFSInstance& inst, const EpsParam& eps) {
  ReducedMaxFS red;
  red.unit.n = inst.n;
  red.int_profit.assign(inst.rows.size(), 0);
  Rat v_max = 0;
  for (const auto& r : inst.rows) v_max = std::max(v_max, r.profit);
  if (v_max == 0) {
    red.trivial = true;
    red.profit_scale = 1;
    return red;
  }
  long long m = static_cast<long long>(inst.rows.size());
  red.profit_scale = Rat(m) / eps.eps / v_max;  // (m/eps)/v_max
  for (std::size_t j = 0; j < inst.rows.size(); ++j) {
    long long vj = to_i64(rat_floor(inst.rows[j].profit * red.profit_scale));
    red.int_profit[j] = vj;
    for (long long k = 0; k < vj; ++k) {
      MaxFSRow u = inst.rows[j];
      u.profit = 1;
      red.unit.rows.push_back(u);
      red.row_of.push_back(static_cast<int>(j));
    }
  }
  return red;
}

WellRoundedMaxFS well_round_maxfs(const MaxFSInstance& unit, const Params& p,
                                  long long ell, long long pad_extra) {
  if (ell < 0) throw InvalidParameter("level count must be non-negative");
  WellRoundedMaxFS wrm;
  wrm.n_orig = unit.n;
  long long m = static_cast<long long>(unit.rows.size());
  wrm.dup = std::max(1LL, p.gamma * ell * m);
  wrm.pad = 1 + pad_extra;

  HighwayInstance shape;
  shape.n_edges = wrm.pad + unit.n * wrm.dup + wrm.pad;
  for (long long e = 1; e <= unit.n; ++e)
    wrm.origin_map.push_back({wrm.pad + (e - 1) * wrm.dup + 1, wrm.pad + e * wrm.dup});
  for (const auto& r : unit.rows) {
    Driver d;
    d.left = wrm.pad + (r.left - 1) * wrm.dup + 1;
    d.right = wrm.pad + r.right * wrm.dup;
    d.budget = 0;
    shape.drivers.push_back(d);
  }
  auto segs = segment_structure(shape);

  wrm.line.n_edges = shape.n_edges;
  wrm.line.mode = DpWeights::Integer;
  for (const auto& s : segs.segments)
    wrm.line.segments.push_back({s.first_edge, s.length, s.drivers});
  for (int j = 0; j < static_cast<int>(unit.rows.size()); ++j) {
    const auto& r = unit.rows[static_cast<std::size_t>(j)];
    wrm.line.drivers.push_back({shape.drivers[static_cast<std::size_t>(j)].left,
                                shape.drivers[static_cast<std::size_t>(j)].right, 0,
                                r.lower, r.upper, j});
  }
  return wrm;
}

namespace {

long long ell_of(long long gamma, long long w_star) {
  long long w = 1, ell = 0;
  while (w < w_star) {
    w *= gamma;
    ++ell;
  }
  if (w != w_star) throw InvalidParameter("W* must be a power of gamma");
  return ell;
}

struct Candidate {
  std::vector<long long> w;  // per original column
  std::vector<int> rows;     // original row indices, ascending
  Rat weighted;
  nlohmann::json dj;
};

Rat row_achieved(const MaxFSRow& r, const std::vector<Rat>& w) {
  Rat s = 0;
  for (long long e = r.left; e <= r.right; ++e) s += w[static_cast<std::size_t>(e - 1)];
  return s;
}

}  // namespace

MaxFSResult run_maxfs(const MaxFSInstance& inst, const MaxFSOptions& opt) {
  auto violations = validate(inst);
  if (!violations.empty()) throw InvalidInput("run_maxfs: " + violations.front());
  const Params& p = opt.params;

  MaxFSResult res;
  res.violation_factor = Rat((p.delta + 2) * (p.delta + 2), p.delta * p.delta);
  res.report.diagnostics["algorithm"] = "maxfs";
  res.report.diagnostics["guarantee_void"] = p.guarantee_void;
  res.report.diagnostics["mode"] =
      (opt.mode == SolveMode::Derandomized) ? "derandomized" : "randomized";

  ReducedMaxFS red = reduce_weights(inst, p.eps);
  nlohmann::json trace;
  trace["profit_scale"] = rat_to_json(red.profit_scale);
  trace["int_profit"] = red.int_profit;
  trace["unit_rows"] = red.unit.rows.size();
  trace["trivial"] = red.trivial;
  res.report.trace = trace;

  // the all-zero assignment is always a candidate: it meets every row with
  // lower bound 0 exactly
  Candidate best;
  best.w.assign(static_cast<std::size_t>(inst.n), 0);
  for (int j = 0; j < static_cast<int>(inst.rows.size()); ++j)
    if (inst.rows[static_cast<std::size_t>(j)].lower == 0) {
      best.rows.push_back(j);
      best.weighted += inst.rows[static_cast<std::size_t>(j)].profit;
    }
  best.dj = {{"candidate", "zero"}};

  long long ell_max = 0;
  for (const auto& r : inst.rows) ell_max = std::max(ell_max, r.lower);

  nlohmann::json guesses = nlohmann::json::array();
  if (!red.trivial && !red.unit.rows.empty() && ell_max > 0) {
    SplitRng rng(opt.seed);
    // a minimum-total-weight optimum is supported inside its selected rows,
    // so its total is at most the sum of upper bounds
    long long upper_sum = 0;
    for (const auto& r : inst.rows) upper_sum += r.upper;
    long long max_w = padded_power(p.gamma, std::min(inst.n * ell_max, upper_sum));
    long long y_count = static_cast<long long>(p.base_weights.size());
    for (long long w_star = 1;; w_star *= p.gamma) {
      long long ell = ell_of(p.gamma, w_star);
      WellRoundedMaxFS wrm = well_round_maxfs(red.unit, p, ell + 1);
      nlohmann::json gj;
      gj["w_star"] = w_star;
      gj["ell"] = ell;
      gj["dup"] = wrm.dup;
      nlohmann::json draws = nlohmann::json::array();

      std::vector<long long> ys;
      if (opt.mode == SolveMode::Derandomized)
        for (long long y = 1; y <= y_count; ++y) ys.push_back(y);
      else
        ys.push_back(rng.uniform(1, y_count));

      for (long long y : ys) {
        long long base_w = p.base_weights[static_cast<std::size_t>(y - 1)];
        long long w_prime = w_star * base_w;
        LineDp dp(wrm.line, p.gamma, p.delta, base_w, w_prime, opt.compressed);
        DpVal root = dp.root();
        nlohmann::json dj;
        dj["y"] = y;
        dj["feasible"] = root.feasible;
        if (root.feasible) {
          DpResult r = dp.reconstruct();
          Candidate cand;
          cand.w.assign(static_cast<std::size_t>(inst.n), 0);
          for (const auto& [e, wgt] : r.weights) {
            if (e <= wrm.pad || e > wrm.pad + inst.n * wrm.dup) continue;
            long long col = (e - wrm.pad - 1) / wrm.dup;
            cand.w[static_cast<std::size_t>(col)] += wgt;
          }
          std::set<int> picked;
          for (const auto& rec : r.records) picked.insert(red.row_of[static_cast<std::size_t>(rec.tag)]);
          cand.rows.assign(picked.begin(), picked.end());
          for (int j : cand.rows) cand.weighted += inst.rows[static_cast<std::size_t>(j)].profit;
          dj["phi"] = r.root_value;
          dj["rows"] = cand.rows;
          dj["weighted"] = rat_to_json(cand.weighted);
          dj["table_entries"] = dp.table_entries();
          cand.dj = {{"candidate", "dp"}, {"w_star", w_star}, {"y", y}, {"phi", r.root_value}};
          if (cand.weighted > best.weighted) best = std::move(cand);
        }
        draws.push_back(dj);
      }
      gj["draws"] = draws;
      guesses.push_back(gj);
      if (w_star >= max_w) break;
    }
  }
  res.report.diagnostics["guesses"] = guesses;
  res.report.diagnostics["chosen"] = best.dj;

  res.weights.weights.clear();
  for (long long wv : best.w) res.weights.weights.push_back(Rat(wv));
  Rat fin = Rat(p.delta + 2, p.delta);
  res.finalized.weights.clear();
  for (long long wv : best.w) res.finalized.weights.push_back(Rat(wv) * fin);
  res.rows = best.rows;
  res.weighted_count = best.weighted;
  for (const auto& r : inst.rows) res.achieved.push_back(row_achieved(r, res.weights.weights));

  res.report.weights = res.finalized;
  res.report.profit = res.weighted_count;
  res.report.satisfied = res.rows;
  nlohmann::json diag_rows = nlohmann::json::array();
  for (std::size_t j = 0; j < inst.rows.size(); ++j) {
    nlohmann::json rowj;
    rowj["achieved"] = rat_to_json(res.achieved[j]);
    rowj["achieved_final"] = rat_to_json(res.achieved[j] * fin);
    rowj["selected"] = std::binary_search(res.rows.begin(), res.rows.end(), static_cast<int>(j));
    diag_rows.push_back(rowj);
  }
  res.report.diagnostics["rows"] = diag_rows;
  res.report.diagnostics["violation_factor"] = rat_to_json(res.violation_factor);
  return res;
}

DpVal maxfs_root_value(const MaxFSInstance& inst, const Params& p,
                       long long w_star, long long y, bool compressed) {
  auto violations = validate(inst);
  if (!violations.empty()) throw InvalidInput("maxfs_root_value: " + violations.front());
  if (y < 1 || y > static_cast<long long>(p.base_weights.size()))
    throw InvalidParameter("y must index a base weight");
  long long ell = ell_of(p.gamma, w_star);
  ReducedMaxFS red = reduce_weights(inst, p.eps);
  if (red.trivial || red.unit.rows.empty()) return {true, 0};
  // extra driver-free pad so that the dissection induced by any optimal
  // solution is realizable at edge granularity (the lower-bound comparison
  // in maxfs_dissection_count relies on this room)
  WellRoundedMaxFS wrm = well_round_maxfs(red.unit, p, ell + 1, p.gamma * (ell + 1) *
                                              static_cast<long long>(red.unit.rows.size()));
  long long base_w = p.base_weights[static_cast<std::size_t>(y - 1)];
  LineDp dp(wrm.line, p.gamma, p.delta, base_w, w_star * base_w, compressed);
  return dp.root();
}

long long maxfs_dissection_count(const MaxFSInstance& inst, const Params& p,
                                 const std::vector<long long>& w_orig,
                                 const std::vector<int>& oracle_rows,
                                 long long w_star, long long x, long long y) {
  auto violations = validate(inst);
  if (!violations.empty()) throw InvalidInput("maxfs_dissection_count: " + violations.front());
  if (static_cast<long long>(w_orig.size()) != inst.n)
    throw InvalidInput("optimal weights must cover every column");
  long long total = 0;
  for (long long wv : w_orig) {
    if (wv < 0) throw InvalidInput("optimal weights must be non-negative");
    total += wv;
  }
  long long ell = ell_of(p.gamma, w_star);
  if (total > w_star) throw InvalidInput("total optimal weight exceeds W*");
  if (x < 1 || x > w_star) throw InvalidParameter("x must lie in {1..W*}");
  if (y < 1 || y > static_cast<long long>(p.base_weights.size()))
    throw InvalidParameter("y must index a base weight");
  long long base_w = p.base_weights[static_cast<std::size_t>(y - 1)];
  long long w_prime = w_star * base_w;

  ReducedMaxFS red = reduce_weights(inst, p.eps);
  if (red.trivial) return 0;

  // cumulative weight positions: [0,x) pad, then the column weights, then the
  // right slack up to W'
  std::vector<long long> cum(static_cast<std::size_t>(inst.n) + 1, x);
  for (long long e = 1; e <= inst.n; ++e)
    cum[static_cast<std::size_t>(e)] = cum[static_cast<std::size_t>(e - 1)] + w_orig[static_cast<std::size_t>(e - 1)];

  std::vector<char> kept(red.unit.rows.size(), 0);
  for (int j : oracle_rows)
    for (std::size_t u = 0; u < red.unit.rows.size(); ++u)
      if (red.row_of[u] == j) kept[u] = 1;

  // weight-space truncated dissection of the optimal solution
  auto rec = [&](auto&& self, long long lo, long long hi, int q) -> long long {
    std::vector<std::size_t> inside;
    for (std::size_t u = 0; u < red.unit.rows.size(); ++u) {
      if (!kept[u]) continue;
      const auto& r = red.unit.rows[u];
      if (cum[static_cast<std::size_t>(r.left - 1)] >= lo &&
          cum[static_cast<std::size_t>(r.right)] <= hi)
        inside.push_back(u);
    }
    if (inside.empty()) return 0;
    if (q == ell) {
      long long cnt = 0;
      for (std::size_t u : inside) {
        const auto& r = red.unit.rows[u];
        long long wj = cum[static_cast<std::size_t>(r.right)] -
                       cum[static_cast<std::size_t>(r.left - 1)];
        if (r.lower * p.delta <= wj * (p.delta + 2) && wj <= r.upper) ++cnt;
      }
      return cnt;
    }
    long long wc = (hi - lo) / p.gamma;
    long long value = 0;
    for (long long i = 0; i < p.gamma; ++i) value += self(self, lo + i * wc, lo + (i + 1) * wc, q + 1);
    for (std::size_t u : inside) {
      const auto& r = red.unit.rows[u];
      long long dl = cum[static_cast<std::size_t>(r.left - 1)];
      long long dr = cum[static_cast<std::size_t>(r.right)];
      long long n = 0;
      bool inside_one = false;
      for (long long i = 0; i < p.gamma; ++i) {
        long long plo = lo + i * wc, phi = lo + (i + 1) * wc;
        if (plo >= dl && phi <= dr) ++n;
        if (plo <= dl && phi >= dr) inside_one = true;
      }
      if (inside_one || n < p.delta) continue;
      if (r.lower * p.delta <= wc * n * (p.delta + 2) && wc * n <= r.upper) ++value;
    }
    return value;
  };
  return rec(rec, 0, w_prime, 0);
}

}  // namespace pathprice
