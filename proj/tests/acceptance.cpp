// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure.  Everything runs at tiny instance sizes on purpose; the point is
// exactness of the checks, not throughput.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pathprice/dissection.hpp"
#include "pathprice/errors.hpp"
#include "pathprice/io.hpp"
#include "pathprice/maxfs.hpp"
#include "pathprice/oracle.hpp"
#include "pathprice/report.hpp"
#include "pathprice/tollbooth.hpp"

using namespace pathprice;

namespace {

int g_failures = 0;

void criterion(int id, const std::string& name, const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  auto t0 = std::chrono::steady_clock::now();
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << ": " << name << " ["
            << ms << " ms]";
  if (!detail.empty()) std::cout << " -- " << detail;
  std::cout << std::endl;
  if (!ok) ++g_failures;
}

HighwayInstance two_driver_example() {
  HighwayInstance inst;
  inst.n_edges = 2;
  inst.drivers = {{1, 1, Rat(4)}, {1, 2, Rat(8)}};
  return inst;
}

// exhaustive 0/1 search used by criterion 7
DpVal edge_brute(const LineProblem& prob, long long a, long long b, long long c) {
  long long len = b - a + 1;
  if (c > len) return {false, 0};
  DpVal best{false, 0};
  for (long long mask = 0; mask < (1LL << len); ++mask) {
    if (__builtin_popcountll(static_cast<unsigned long long>(mask)) != c) continue;
    long long value = 0;
    for (const auto& d : prob.drivers) {
      if (d.left < a || d.right > b) continue;
      long long wd = 0;
      for (long long e = d.left; e <= d.right; ++e)
        if ((mask >> (e - a)) & 1) ++wd;
      if (wd <= d.budget) value += wd;
    }
    if (!best.feasible || value > best.value) best = {true, value};
  }
  return best;
}

LineProblem line_of(const HighwayInstance& inst) {
  LineProblem p;
  p.n_edges = inst.n_edges;
  p.mode = DpWeights::ZeroOne;
  for (const auto& s : segment_structure(inst).segments)
    p.segments.push_back({s.first_edge, s.length, s.drivers});
  for (int j = 0; j < static_cast<int>(inst.drivers.size()); ++j) {
    const auto& d = inst.drivers[static_cast<std::size_t>(j)];
    p.drivers.push_back({d.left, d.right, static_cast<long long>(numerator(d.budget)), 0, 0, j});
  }
  return p;
}

bool c1_oracle_agreement(std::string& detail) {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    HighwayInstance inst = generate_random(3, 3, 5, seed);
    Rat a = exact_highway_bruteforce(inst).opt;
    Rat b = exact_highway_sweep(inst);
    if (a != b) {
      detail = "disagreement at seed " + std::to_string(seed);
      return false;
    }
  }
  detail = "100 seeds, n=3, m=3, budgets <= 5";
  return true;
}

bool c2_soundness(std::string& detail) {
  HighwayOptions opt;
  opt.params = make_params(Rat(1, 2));
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    HighwayInstance inst = generate_random(2, 2, 5, seed);
    SolveReport r = run_hptas(inst, opt);
    if (profit(inst, r.weights) != r.profit) {
      detail = "reported profit does not match the weights at seed " + std::to_string(seed);
      return false;
    }
    if (r.profit > exact_highway_bruteforce(inst).opt) {
      detail = "solver exceeds the optimum at seed " + std::to_string(seed);
      return false;
    }
    ++checked;
  }
  detail = std::to_string(checked) + " highway instances";
  return true;
}

bool c3_good_driver_mechanics(std::string& detail) {
  HighwayInstance inst = two_driver_example();
  Params p = make_params(Rat(1, 2));
  HighwayOptions opt;
  opt.params = p;
  opt.audit = true;
  SolveReport r = run_hptas(inst, opt);
  const auto& chosen = r.diagnostics["chosen"];
  if (chosen.is_null() || chosen.empty()) {
    detail = "no winning draw recorded";
    return false;
  }
  WellRoundedInstance wr = well_round(inst, p.eps);
  Rat scale(p.delta, p.delta + 2);
  Rat one_plus(p.delta + 2, p.delta);  // 1 + 4 eps
  for (const auto& g : r.diagnostics["guesses"]) {
    if (g["w_star"] != chosen["w_star"]) continue;
    for (const auto& d : g["draws"]) {
      if (d["x"] != chosen["x"] || d["y"] != chosen["y"]) continue;
      Rat recorded = 0;
      for (const auto& rec : d["records"]) {
        long long wf = rec["weight_full"].get<long long>();
        long long budget = wr.drivers[rec["driver"].get<std::size_t>()].budget;
        if (rec["kind"] == "good" && Rat(wf) * scale > Rat(budget)) {
          detail = "good driver over budget after scaling";
          return false;
        }
        if (rec["kind"] == "base" && wf > budget) {
          detail = "base driver over budget";
          return false;
        }
        recorded += Rat(wf);
      }
      Rat apx_d(d["apx_d"].get<long long>());
      if (recorded * scale < apx_d / one_plus) {
        detail = "recorded weight below apx_D / (1 + 4 eps)";
        return false;
      }
      detail = "records of the winning draw audited";
      return true;
    }
  }
  detail = "winning draw not found in the diagnostics";
  return false;
}

bool c4_table_dominates_dissection(std::string& detail) {
  Params p = make_params(Rat(1, 2));
  int checked = 0;
  for (std::uint64_t seed = 1; checked < 20 && seed <= 200; ++seed) {
    HighwayInstance inst = generate_random(2, 2, 4, seed);
    if (inst.drivers.empty()) continue;
    WellRoundedInstance wr = well_round(inst, p.eps);
    if (wr.trivial || wr.drivers.empty()) continue;

    HighwayInstance blk;
    blk.n_edges = inst.n_edges;
    for (const auto& d : wr.drivers) {
      const auto& od = inst.drivers[static_cast<std::size_t>(d.orig)];
      blk.drivers.push_back({od.left, od.right, Rat(d.budget)});
    }
    auto orc = exact_highway_bruteforce(blk);
    long long total = 0;
    for (long long w : orc.weights) total += w;
    long long w_star = padded_power(p.gamma, total);

    for (long long y = 1; y <= 2; ++y)
      for (long long x = 1; x <= w_star; ++x) {
        DpVal phi = hptas_root_value(wr, w_star, x, y, p);
        if (!phi.feasible) {
          detail = "infeasible root at seed " + std::to_string(seed);
          return false;
        }
        long long apx_o = optimal_dissection_value(wr, orc.weights, orc.satisfied, x, y, p);
        if (phi.value < apx_o) {
          detail = "phi < apx_O at seed " + std::to_string(seed) + ", x=" +
                   std::to_string(x) + ", y=" + std::to_string(y);
          return false;
        }
      }
    ++checked;
  }
  if (checked < 20) {
    detail = "only " + std::to_string(checked) + " usable instances";
    return false;
  }
  detail = "20 instances, every (x, y)";
  return true;
}

bool c5_lift_preserves_profit(std::string& detail) {
  HighwayInstance inst;
  inst.n_edges = 2;
  inst.drivers = {{1, 1, Rat(10)}, {2, 2, Rat(19, 8)}, {1, 2, Rat(7, 2)}};
  WellRoundedInstance wr = well_round(inst, make_eps(Rat(1, 2)));
  HighwayInstance rounded = wr.as_instance();
  Rat lambda = wr.trace.scale;
  long long bits = std::min<long long>(wr.n_expanded, 12);
  for (long long mask = 0; mask < (1LL << bits); ++mask) {
    std::vector<long long> w(static_cast<std::size_t>(wr.n_expanded), 0);
    for (long long b = 0; b < bits; ++b) w[static_cast<std::size_t>(b)] = (mask >> b) & 1;
    WeightAssignment rw;
    for (long long v : w) rw.weights.push_back(Rat(v));
    if (profit(inst, lift(w, wr)) < profit(rounded, rw) / lambda) {
      detail = "violated at mask " + std::to_string(mask);
      return false;
    }
  }
  detail = "exhaustive over " + std::to_string(1LL << bits) + " weight vectors";
  return true;
}

bool c6_derandomization(std::string& detail) {
  HighwayInstance inst = two_driver_example();
  HighwayOptions opt;
  opt.params = make_params(Rat(1, 2));
  SolveReport der = run_hptas(inst, opt);
  Rat grid_max = 0;
  for (const auto& g : der.diagnostics["guesses"])
    for (const auto& d : g["draws"])
      if (d["feasible"].get<bool>()) {
        Rat pr = rat_from_json(d["profit"]);
        if (pr > grid_max) grid_max = pr;
      }
  if (der.profit != grid_max) {
    detail = "derandomized profit is not the grid maximum";
    return false;
  }
  opt.mode = SolveMode::Randomized;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    opt.seed = seed;
    if (run_hptas(inst, opt).profit > der.profit) {
      detail = "randomized beats derandomized at seed " + std::to_string(seed);
      return false;
    }
  }
  detail = "grid maximum matched; 10 randomized seeds dominated";
  return true;
}

bool c7_base_profit(std::string& detail) {
  int layouts = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    HighwayInstance inst = generate_random(8, 4, 6, seed);
    LineProblem prob = line_of(inst);
    for (long long c = 1; c <= inst.n_edges; ++c) {
      DpVal got = base_profit(prob, 1, inst.n_edges, c);
      DpVal want = edge_brute(prob, 1, inst.n_edges, c);
      if (got.feasible != want.feasible ||
          (got.feasible && got.value != want.value)) {
        detail = "mismatch at seed " + std::to_string(seed) + ", c=" + std::to_string(c);
        return false;
      }
    }
    ++layouts;
  }
  detail = std::to_string(layouts) + " layouts, 8 edges, every total";
  return true;
}

bool c8_tollbooth_highway_coherence(std::string& detail) {
  Params p = make_params(Rat(1, 2));
  // theta = 2 tree and its highway twin, budgets generous and equal so the
  // different final scalings cannot change which drivers are satisfied
  HighwayInstance hw;
  hw.n_edges = 2;
  hw.drivers = {{1, 2, Rat(8)}, {2, 2, Rat(8)}};
  TreeInstance tree;
  tree.n_nodes = 3;
  tree.source = 1;
  tree.edges = {{1, 2}, {2, 3}};
  tree.drivers = {{1, 3, Rat(8)}, {2, 3, Rat(8)}};

  WellRoundedInstance wr = well_round(hw, p.eps);
  TollboothOptions topt;
  topt.params = p;
  for (long long w_star : {1LL, 4LL}) {
    for (long long y = 1; y <= 2; ++y)
      for (long long x = 1; x <= w_star; ++x) {
        TollboothDebugRun dbg = tollbooth_debug_run(tree, topt, w_star, x, y);
        BoundedLine bl = bound(wr, w_star, x, y, p);
        LineDp dp(bl.line, p.gamma, p.delta, bl.base_w, bl.w_prime, true);
        if (dbg.path_entries.empty()) {
          detail = "no path table exposed for theta = 2";
          return false;
        }
        for (const auto& e : dbg.path_entries) {
          DpVal v = dp.value(e.a, e.b, e.level);
          if (v.feasible != e.feasible || (v.feasible && v.value != e.value)) {
            std::ostringstream os;
            os << "table mismatch at W*=" << w_star << " x=" << x << " y=" << y
               << " [" << e.a << "," << e.b << "] q=" << e.level;
            detail = os.str();
            return false;
          }
        }
      }
  }
  // final profits differ exactly by the delta/(delta+2) vs delta/(delta+4) scalings
  HighwayOptions hopt;
  hopt.params = p;
  SolveReport rh = run_hptas(hw, hopt);
  SolveReport rt = run_tollbooth(tree, topt);
  if (rt.profit * Rat(p.delta + 4) != rh.profit * Rat(p.delta + 2)) {
    detail = "final profits are not related by the scaling ratio";
    return false;
  }
  detail = "tables agree entry-for-entry; profits differ by the scaling ratio";
  return true;
}

bool c9_maxfs_guarantees(std::string& detail) {
  Params p = make_params(Rat(1, 2));
  Rat rho(p.delta + 2, p.delta);
  MaxFSOptions opt;
  opt.params = p;
  SplitRng rng(4242);
  int checked = 0;
  while (checked < 20) {
    MaxFSInstance inst;
    inst.n = rng.uniform(1, 3);
    long long m = rng.uniform(1, 3);
    for (long long j = 0; j < m; ++j) {
      long long a = rng.uniform(1, inst.n), b = rng.uniform(a, inst.n);
      long long lo = rng.uniform(0, 4), hi = rng.uniform(lo, 6);
      inst.rows.push_back({a, b, lo, hi, Rat(rng.uniform(1, 2))});
    }
    MaxFSResult res = run_maxfs(inst, opt);
    for (int j : res.rows) {
      const auto& row = inst.rows[static_cast<std::size_t>(j)];
      Rat pre = res.achieved[static_cast<std::size_t>(j)];
      Rat post = pre * rho;
      if (pre * rho < Rat(row.lower) || pre > rho * Rat(row.upper)) {
        detail = "relaxed bounds violated pre-finalization";
        return false;
      }
      if (post < Rat(row.lower) || post > rho * rho * Rat(row.upper)) {
        detail = "post-finalization bounds violated";
        return false;
      }
    }
    Rat claimed = 0;
    for (int j : res.rows) claimed += inst.rows[static_cast<std::size_t>(j)].profit;
    if (claimed != res.weighted_count) {
      detail = "weighted count does not match the selected rows";
      return false;
    }
    if (res.weighted_count > exact_maxfs(inst, {}, rho).opt_weight) {
      detail = "selected weight exceeds the relaxed optimum";
      return false;
    }
    ++checked;
  }
  detail = "20 instances, n <= 3, m <= 3, lower bounds <= 4";
  return true;
}

bool c10_maxfs_dissection(std::string& detail) {
  Params p = make_params(Rat(1, 2));
  std::vector<MaxFSInstance> cases;
  {
    MaxFSInstance a;
    a.n = 2;
    a.rows = {{1, 1, 1, 2, Rat(1)}, {1, 2, 0, 4, Rat(1)}, {2, 2, 2, 3, Rat(1)}};
    cases.push_back(a);
    MaxFSInstance b;
    b.n = 3;
    b.rows = {{1, 2, 2, 2, Rat(2)}, {2, 3, 1, 3, Rat(1)}};
    cases.push_back(b);
  }
  for (const auto& inst : cases) {
    auto orc = exact_maxfs(inst);
    std::vector<long long> w_orig;
    long long total = 0;
    for (const auto& r : orc.witness) {
      if (denominator(r) != 1) {
        detail = "oracle witness is not integral";
        return false;
      }
      w_orig.push_back(static_cast<long long>(numerator(r)));
      total += w_orig.back();
    }
    long long w_star = padded_power(p.gamma, total);
    for (long long y = 1; y <= 2; ++y) {
      DpVal phi = maxfs_root_value(inst, p, w_star, y);
      if (!phi.feasible) {
        detail = "infeasible root table";
        return false;
      }
      for (long long x = 1; x <= w_star; ++x) {
        long long cnt = maxfs_dissection_count(inst, p, w_orig, orc.rows, w_star, x, y);
        if (phi.value < cnt) {
          detail = "phi < induced count at x=" + std::to_string(x) + ", y=" + std::to_string(y);
          return false;
        }
      }
    }
  }
  detail = "strict-oracle witnesses dominated for every pad split";
  return true;
}

bool c11_reproducibility(std::string& detail) {
  Params p = make_params(Rat(1, 2));
  {
    HighwayInstance inst = generate_random(2, 2, 5, 9);
    for (SolveMode mode : {SolveMode::Derandomized, SolveMode::Randomized}) {
      HighwayOptions opt;
      opt.params = p;
      opt.mode = mode;
      opt.seed = 7;
      SolveReport a = run_hptas(inst, opt);
      SolveReport b = run_hptas(inst, opt);
      a.volatile_info = {{"t", 1}};
      b.volatile_info = {{"t", 2}};
      if (report_to_string(a, false) != report_to_string(b, false)) {
        detail = "highway reports differ";
        return false;
      }
    }
  }
  {
    MaxFSInstance inst;
    inst.n = 2;
    inst.rows = {{1, 2, 1, 3, Rat(2)}, {2, 2, 0, 2, Rat(1)}};
    MaxFSOptions opt;
    opt.params = p;
    if (report_to_string(run_maxfs(inst, opt).report, false) !=
        report_to_string(run_maxfs(inst, opt).report, false)) {
      detail = "maxfs reports differ";
      return false;
    }
  }
  {
    TreeInstance tree;
    tree.n_nodes = 3;
    tree.source = 1;
    tree.edges = {{1, 2}, {2, 3}};
    tree.drivers = {{1, 3, Rat(3)}};
    TollboothOptions opt;
    opt.params = p;
    if (report_to_string(run_tollbooth(tree, opt), false) !=
        report_to_string(run_tollbooth(tree, opt), false)) {
      detail = "tollbooth reports differ";
      return false;
    }
  }
  detail = "byte-identical outside the volatile block, all three solvers";
  return true;
}

}  // namespace

int main() {
  criterion(1, "independent exact oracles agree", c1_oracle_agreement);
  criterion(2, "solver output is honest and never beats the oracle", c2_soundness);
  criterion(3, "good-driver records stay within budget after scaling", c3_good_driver_mechanics);
  criterion(4, "the DP table dominates the oracle-guided dissection", c4_table_dominates_dissection);
  criterion(5, "lifting loses at most the rounding scale", c5_lift_preserves_profit);
  criterion(6, "derandomization takes the grid maximum", c6_derandomization);
  criterion(7, "base-level composition search is exact", c7_base_profit);
  criterion(8, "tollbooth and highway agree on theta = 2", c8_tollbooth_highway_coherence);
  criterion(9, "MaxFS bound violation stays within (1 + 4 eps)^2", c9_maxfs_guarantees);
  criterion(10, "MaxFS table dominates the strict-oracle dissection", c10_maxfs_dissection);
  criterion(11, "reports are byte-reproducible outside volatile", c11_reproducibility);
  if (g_failures > 0) {
    std::cout << g_failures << " criterion(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all criteria passed" << std::endl;
  return 0;
}
