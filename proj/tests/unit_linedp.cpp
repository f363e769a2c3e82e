#include <doctest.h>

#include <vector>

#include "pathprice/instance.hpp"
#include "pathprice/linedp.hpp"

using namespace pathprice;

namespace {

LineProblem make_line(const HighwayInstance& inst) {
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

// edge-level 0/1 brute force over placements of total c on [a, b]
DpVal edge_brute(const HighwayInstance& inst, long long a, long long b, long long c) {
  long long len = b - a + 1;
  if (c > len) return {false, 0};
  DpVal best{false, 0};
  for (long long mask = 0; mask < (1LL << len); ++mask) {
    if (__builtin_popcountll(static_cast<unsigned long long>(mask)) != c) continue;
    long long value = 0;
    for (const auto& d : inst.drivers) {
      if (d.left < a || d.right > b) continue;
      long long wd = 0;
      for (long long e = d.left; e <= d.right; ++e)
        if ((mask >> (e - a)) & 1) ++wd;
      if (Rat(wd) <= d.budget) value += wd;
    }
    if (!best.feasible || value > best.value) best = {true, value};
  }
  return best;
}

}  // namespace

TEST_CASE("base value on a driver-free path is zero") {
  HighwayInstance inst;
  inst.n_edges = 4;
  DpVal v = base_profit(make_line(inst), 1, 4, 3);
  CHECK(v.feasible);
  CHECK(v.value == 0);
}

TEST_CASE("base value places around a tight budget") {
  HighwayInstance inst;
  inst.n_edges = 3;
  inst.drivers = {{1, 2, Rat(1)}};
  DpVal v = base_profit(make_line(inst), 1, 3, 2);
  CHECK(v.feasible);
  CHECK(v.value == 1);  // one unit on the driver, one on edge 3
}

TEST_CASE("base value is infeasible when the path is too short") {
  HighwayInstance inst;
  inst.n_edges = 1;
  CHECK_FALSE(base_profit(make_line(inst), 1, 1, 2).feasible);
}

TEST_CASE("segment compositions match the edge-level brute force") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    HighwayInstance inst = generate_random(6, 3, 4, seed);
    LineProblem prob = make_line(inst);
    for (long long c = 1; c <= inst.n_edges; ++c) {
      DpVal got = base_profit(prob, 1, inst.n_edges, c);
      DpVal want = edge_brute(inst, 1, inst.n_edges, c);
      CHECK(got.feasible == want.feasible);
      if (got.feasible) CHECK(got.value == want.value);
    }
  }
}

TEST_CASE("a path shorter than the level weight is infeasible") {
  HighwayInstance inst;
  inst.n_edges = 5;
  inst.drivers = {{1, 5, Rat(3)}};
  LineDp dp(make_line(inst), 4, 1, 2, 8);  // W' = 8 > 5 edges
  CHECK_FALSE(dp.root().feasible);
}

TEST_CASE("compressed and exhaustive tables agree") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    HighwayInstance inst = generate_random(10, 3, 6, seed);
    LineProblem prob = make_line(inst);
    LineDp fast(prob, 4, 1, 2, 8, true);
    LineDp slow(prob, 4, 1, 2, 8, false);
    DpVal fv = fast.root(), sv = slow.root();
    CHECK(fv.feasible == sv.feasible);
    if (fv.feasible) {
      CHECK(fv.value == sv.value);
      // subpath entries agree too
      for (long long a = 1; a <= inst.n_edges; ++a)
        for (long long b = a; b <= inst.n_edges; ++b)
          for (int q : {1}) {
            DpVal x = fast.value(a, b, q);
            DpVal y = slow.value(a, b, q);
            CHECK(x.feasible == y.feasible);
            if (x.feasible) CHECK(x.value == y.value);
          }
    }
  }
}

TEST_CASE("reconstruction places exactly W-prime units and reproduces the root value") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    HighwayInstance inst = generate_random(12, 3, 6, seed);
    LineDp dp(make_line(inst), 4, 1, 2, 8);
    if (!dp.root().feasible) continue;
    DpResult res = dp.reconstruct();
    CHECK(res.root_value == dp.root().value);
    long long total = 0;
    for (auto [e, w] : res.weights) {
      CHECK(w == 1);
      CHECK(e >= 1);
      CHECK(e <= 12);
      total += w;
    }
    CHECK(total == 8);
    // the records account for the root value
    long long credited = 0;
    for (const auto& r : res.records) credited += r.credit;
    CHECK(credited == res.root_value);
  }
}

TEST_CASE("stored entries dominate sampled candidate partitions") {
  HighwayInstance inst = generate_random(12, 3, 6, 3);
  LineProblem prob = make_line(inst);
  LineDp dp(prob, 4, 1, 2, 8);
  if (!dp.root().feasible) return;
  long long root = dp.root().value;
  // any 3-cut partition of the root with feasible children scores no higher
  SplitRng rng(99);
  for (int t = 0; t < 200; ++t) {
    long long c1 = rng.uniform(1, 10), c2 = rng.uniform(c1, 11), c3 = rng.uniform(c2, 11);
    long long bounds[5] = {0, c1, c2, c3, 12};
    long long acc = 0;
    bool ok = true;
    for (int i = 0; i < 4 && ok; ++i) {
      if (bounds[i] == bounds[i + 1]) {
        ok = false;  // empty part cannot carry weight 2
        break;
      }
      DpVal v = dp.value(bounds[i] + 1, bounds[i + 1], 1);
      if (!v.feasible) ok = false;
      else acc += v.value;
    }
    if (!ok) continue;
    for (const auto& d : prob.drivers) {
      long long n = 0;
      bool inside_one = false;
      for (int i = 0; i < 4; ++i) {
        if (bounds[i] + 1 >= d.left && bounds[i + 1] <= d.right) ++n;
        if (bounds[i] + 1 <= d.left && bounds[i + 1] >= d.right) inside_one = true;
      }
      if (!inside_one && n >= 1 && 2 * n <= d.budget) acc += 2 * n;
    }
    CHECK(root >= acc);
  }
}
