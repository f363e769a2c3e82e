#include "pathprice/dissection.hpp"

#include <algorithm>

#include "pathprice/errors.hpp"
#include "pathprice/io.hpp"

namespace pathprice {

long long padded_power(long long gamma, long long raw_total) {
  long long w = 1;
  while (w < std::max(raw_total, 1LL)) w *= gamma;
  return w;
}

namespace {

nlohmann::json trace_json(const WellRoundedInstance& wr) {
  nlohmann::json t;
  t["scale"] = rat_to_json(wr.trace.scale);
  t["epsilon"] = rat_to_json(wr.trace.epsilon);
  t["discarded"] = wr.trace.discarded;
  t["kept"] = wr.trace.kept;
  t["rounded_budgets"] = wr.trace.rounded_budgets;
  t["expansion"] = wr.trace.expansion;
  t["pad"] = wr.trace.pad;
  t["trivial"] = wr.trivial;
  return t;
}

SolveReport zero_report(const HighwayInstance& inst) {
  SolveReport r;
  r.weights.weights.assign(static_cast<std::size_t>(inst.n_edges), Rat(0));
  r.profit = 0;
  r.satisfied = satisfied_set(inst, r.weights);
  r.diagnostics = nlohmann::json::object();
  return r;
}

long long check_ell(long long gamma, long long w_star) {
  long long w = 1, ell = 0;
  while (w < w_star) {
    w *= gamma;
    ++ell;
  }
  if (w != w_star) throw InvalidParameter("W* must be a power of gamma");
  return ell;
}

nlohmann::json records_json(const std::vector<DpRecord>& records) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::json rj;
    rj["kind"] = (r.kind == DpRecord::BaseSatisfied) ? "base" : "good";
    rj["driver"] = r.driver;
    rj["tag"] = r.tag;
    rj["n_parts"] = r.n_parts;
    rj["credit"] = r.credit;
    rj["weight_full"] = r.weight_full;
    out.push_back(rj);
  }
  return out;
}

}  // namespace

BoundedLine bound(const WellRoundedInstance& wr, long long w_star, long long x,
                  long long y, const Params& p) {
  BoundedLine bl;
  bl.ell = check_ell(p.gamma, w_star);
  if (x < 1 || x > w_star) throw InvalidParameter("x must lie in {1..W*}");
  if (y < 1 || y > static_cast<long long>(p.base_weights.size()))
    throw InvalidParameter("y must index a base weight");
  bl.w_star = w_star;
  bl.x = x;
  bl.y = y;
  bl.base_w = p.base_weights[static_cast<std::size_t>(y - 1)];
  bl.w_prime = w_star * bl.base_w;
  bl.left_pad = x;
  long long tail = w_star * (bl.base_w - 1) - x;
  bl.right_pad = w_star * p.gamma + tail;

  HighwayInstance g0;
  g0.n_edges = bl.left_pad + wr.n_expanded + bl.right_pad;
  for (const auto& d : wr.drivers)
    g0.drivers.push_back({d.left + x, d.right + x, Rat(d.budget)});
  auto segs = segment_structure(g0);

  bl.line.n_edges = g0.n_edges;
  bl.line.mode = DpWeights::ZeroOne;
  for (const auto& s : segs.segments)
    bl.line.segments.push_back({s.first_edge, s.length, s.drivers});
  for (int j = 0; j < static_cast<int>(wr.drivers.size()); ++j) {
    const auto& d = wr.drivers[static_cast<std::size_t>(j)];
    bl.line.drivers.push_back({d.left + x, d.right + x, d.budget, 0, 0, j});
  }
  return bl;
}

DpVal hptas_root_value(const WellRoundedInstance& wr, long long w_star,
                       long long x, long long y, const Params& p, bool compressed) {
  BoundedLine bl = bound(wr, w_star, x, y, p);
  LineDp dp(bl.line, p.gamma, p.delta, bl.base_w, bl.w_prime, compressed);
  return dp.root();
}

SolveReport run_hptas(const HighwayInstance& inst, const HighwayOptions& opt) {
  auto violations = validate(inst);
  if (!violations.empty()) throw InvalidInput("run_hptas: " + violations.front());
  const Params& p = opt.params;

  SolveReport best = zero_report(inst);
  best.diagnostics["algorithm"] = "highway";
  best.diagnostics["guarantee_void"] = p.guarantee_void;

  if (inst.drivers.empty()) {
    best.trace = nlohmann::json::object();
    return best;
  }
  WellRoundedInstance wr = well_round(inst, p.eps);
  best.trace = trace_json(wr);
  if (wr.trivial || wr.drivers.empty()) return best;

  SplitRng rng(opt.seed);
  nlohmann::json guesses = nlohmann::json::array();
  nlohmann::json chosen;
  // a minimum-total-weight optimum puts weight only inside satisfied driver
  // paths, so its total is at most the budget sum
  long long budget_sum = 0;
  for (const auto& d : wr.drivers) budget_sum += d.budget;
  long long max_w = padded_power(p.gamma, std::min(wr.n_expanded, budget_sum));

  for (long long w_star = 1;; w_star *= p.gamma) {
    nlohmann::json gj;
    gj["w_star"] = w_star;
    gj["ell"] = check_ell(p.gamma, w_star);
    nlohmann::json draws = nlohmann::json::array();

    std::vector<std::pair<long long, long long>> xy;  // (x, y)
    long long y_count = static_cast<long long>(p.base_weights.size());
    if (opt.mode == SolveMode::Derandomized) {
      for (long long y = 1; y <= y_count; ++y)
        for (long long x = 1; x <= w_star; ++x) xy.push_back({x, y});
    } else {
      long long x = rng.uniform(1, w_star);
      long long y = rng.uniform(1, y_count);
      xy.push_back({x, y});
    }

    for (auto [x, y] : xy) {
      BoundedLine bl = bound(wr, w_star, x, y, p);
      LineDp dp(bl.line, p.gamma, p.delta, bl.base_w, bl.w_prime, opt.compressed);
      DpVal root = dp.root();
      nlohmann::json dj;
      dj["x"] = x;
      dj["y"] = y;
      dj["feasible"] = root.feasible;
      if (root.feasible) {
        DpResult res = dp.reconstruct();
        std::vector<long long> w_exp(static_cast<std::size_t>(wr.n_expanded), 0);
        for (const auto& [e, w] : res.weights)
          if (e > bl.left_pad && e <= bl.left_pad + wr.n_expanded)
            w_exp[static_cast<std::size_t>(e - bl.left_pad - 1)] = w;
        WeightAssignment lifted = lift(w_exp, wr, Rat(p.delta, p.delta + 2));
        Rat pr = profit(inst, lifted);
        dj["apx_d"] = res.root_value;
        dj["profit"] = rat_to_json(pr);
        dj["table_entries"] = dp.table_entries();
        dj["feasible_entries"] = dp.feasible_entries();
        if (opt.audit) dj["records"] = records_json(res.records);
        if (pr > best.profit) {
          best.profit = pr;
          best.weights = lifted;
          best.satisfied = satisfied_set(inst, lifted);
          chosen = {{"w_star", w_star}, {"x", x}, {"y", y}, {"apx_d", res.root_value}};
        }
      }
      draws.push_back(dj);
    }
    gj["draws"] = draws;
    guesses.push_back(gj);
    if (w_star >= max_w) break;
  }
  best.diagnostics["guesses"] = guesses;
  best.diagnostics["chosen"] = chosen;
  best.diagnostics["mode"] =
      (opt.mode == SolveMode::Derandomized) ? "derandomized" : "randomized";
  return best;
}

long long optimal_dissection_value(const WellRoundedInstance& wr,
                                   const std::vector<long long>& w_orig,
                                   const std::vector<int>& satisfied,
                                   long long x, long long y, const Params& p) {
  if (static_cast<long long>(w_orig.size()) != static_cast<long long>(wr.origin_map.size()))
    throw InvalidInput("optimal weights must cover every original edge");
  long long total = 0;
  for (std::size_t i = 0; i < w_orig.size(); ++i) {
    long long span = wr.origin_map[i].second - wr.origin_map[i].first + 1;
    if (w_orig[i] < 0 || w_orig[i] > span)
      throw InvalidInput("optimal edge weight cannot be spread over the expansion as 0/1");
    total += w_orig[i];
  }
  long long w_star = padded_power(p.gamma, total);
  BoundedLine bl = bound(wr, w_star, x, y, p);
  LineDp dp(bl.line, p.gamma, p.delta, bl.base_w, bl.w_prime, true);

  // w' on G0: all-ones left pad, 0/1 spread of w*, the power-of-gamma slack on
  // the dummy pad, all-ones tail.
  std::vector<long long> w0(static_cast<std::size_t>(bl.line.n_edges) + 1, 0);
  for (long long e = 1; e <= x; ++e) w0[static_cast<std::size_t>(e)] = 1;
  for (std::size_t i = 0; i < w_orig.size(); ++i)
    for (long long k = 0; k < w_orig[i]; ++k)
      w0[static_cast<std::size_t>(x + wr.origin_map[i].first + k)] = 1;
  long long dummy_first = x + wr.n_expanded + 1;
  for (long long k = 0; k < w_star - total; ++k)
    w0[static_cast<std::size_t>(dummy_first + k)] = 1;
  long long tail_first = dummy_first + w_star * p.gamma;
  for (long long e = tail_first; e <= bl.line.n_edges; ++e) w0[static_cast<std::size_t>(e)] = 1;

  std::vector<long long> prefix(w0.size(), 0);
  for (std::size_t e = 1; e < w0.size(); ++e) prefix[e] = prefix[e - 1] + w0[e];
  if (prefix.back() != bl.w_prime) throw InternalError("dissection weights do not sum to W'");

  std::vector<char> keep(bl.line.drivers.size(), 0);
  for (int j : satisfied) keep[static_cast<std::size_t>(j)] = 1;

  int levels = static_cast<int>(check_ell(p.gamma, w_star));
  auto level_weight = [&](int q) {
    long long w = bl.w_prime;
    for (int i = 0; i < q; ++i) w /= p.gamma;
    return w;
  };

  auto rec = [&](auto&& self, long long a, long long b, int q) -> long long {
    bool any = false;
    for (std::size_t j = 0; j < bl.line.drivers.size(); ++j)
      if (keep[j] && bl.line.drivers[j].left >= a && bl.line.drivers[j].right <= b)
        any = true;
    if (!any) return 0;
    if (q == levels) {
      DpVal base = dp.base_value(a, b, bl.base_w, &keep);
      if (!base.feasible) throw InternalError("infeasible base entry in the guided dissection");
      return base.value;
    }
    long long wc = level_weight(q + 1);
    std::vector<long long> bounds;
    bounds.push_back(a - 1);
    long long c = a - 1;
    for (long long i = 1; i < p.gamma; ++i) {
      long long target = prefix[static_cast<std::size_t>(a - 1)] + i * wc;
      while (prefix[static_cast<std::size_t>(c)] < target) ++c;
      bounds.push_back(c);
    }
    bounds.push_back(b);
    long long value = 0;
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i)
      value += self(self, bounds[i] + 1, bounds[i + 1], q + 1);
    for (std::size_t j = 0; j < bl.line.drivers.size(); ++j) {
      if (!keep[j]) continue;
      const auto& d = bl.line.drivers[j];
      if (d.left < a || d.right > b) continue;
      long long n = 0;
      bool inside_one = false;
      for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
        long long lo = bounds[i] + 1, hi = bounds[i + 1];
        if (lo > hi) continue;
        if (lo >= d.left && hi <= d.right) ++n;
        if (lo <= d.left && hi >= d.right) inside_one = true;
      }
      if (inside_one || n < p.delta) continue;
      if (wc * n > d.budget) continue;
      value += wc * n;
    }
    return value;
  };
  return rec(rec, 1, bl.line.n_edges, 0);
}

}  // namespace pathprice
