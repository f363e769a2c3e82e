#include <doctest.h>

#include "pathprice/errors.hpp"
#include "pathprice/oracle.hpp"

using namespace pathprice;

TEST_CASE("highway brute force, two overlapping drivers") {
  HighwayInstance inst;
  inst.n_edges = 2;
  inst.drivers = {{1, 1, Rat(3)}, {1, 2, Rat(5)}};
  auto r = exact_highway_bruteforce(inst);
  CHECK(r.opt == Rat(8));
  CHECK(r.weights == std::vector<long long>{3, 2});
  CHECK(r.satisfied == std::vector<int>{0, 1});
}

TEST_CASE("highway brute force, three drivers") {
  HighwayInstance inst;
  inst.n_edges = 2;
  inst.drivers = {{1, 1, Rat(4)}, {2, 2, Rat(3)}, {1, 2, Rat(5)}};
  CHECK(exact_highway_bruteforce(inst).opt == Rat(10));
}

TEST_CASE("highway oracle edge cases") {
  HighwayInstance inst;
  inst.n_edges = 3;
  CHECK(exact_highway_bruteforce(inst).opt == Rat(0));
  CHECK(exact_highway_sweep(inst) == Rat(0));

  inst.drivers = {{1, 3, Rat(7)}};
  CHECK(exact_highway_bruteforce(inst).opt == Rat(7));

  inst.drivers = {{1, 1, Rat(2)}, {3, 3, Rat(4)}};
  CHECK(exact_highway_bruteforce(inst).opt == Rat(6));
}

TEST_CASE("the sweep oracle agrees with the brute force") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    HighwayInstance inst = generate_random(4, 3, 5, seed);
    CHECK(exact_highway_sweep(inst) == exact_highway_bruteforce(inst).opt);
  }
}

TEST_CASE("the oracle witness is genuinely optimal and feasible") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    HighwayInstance inst = generate_random(3, 3, 5, seed);
    auto r = exact_highway_bruteforce(inst);
    WeightAssignment w;
    for (long long v : r.weights) w.weights.push_back(Rat(v));
    CHECK(profit(inst, w) == r.opt);
    CHECK(satisfied_set(inst, w) == r.satisfied);
  }
}

TEST_CASE("the optimum is monotone in budgets") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    HighwayInstance inst = generate_random(3, 3, 4, seed);
    HighwayInstance bigger = inst;
    for (auto& d : bigger.drivers) d.budget += 1;
    CHECK(exact_highway_bruteforce(bigger).opt >= exact_highway_bruteforce(inst).opt);
  }
}

TEST_CASE("oversized instances are refused, not truncated") {
  HighwayInstance inst;
  inst.n_edges = 7;  // default cap is 6
  inst.drivers = {{1, 7, Rat(1)}};
  CHECK_THROWS_AS(exact_highway_bruteforce(inst), BoundsRefused);
  CHECK_THROWS_AS(exact_highway_sweep(inst), BoundsRefused);

  inst.n_edges = 2;
  inst.drivers = {{1, 2, Rat(100)}};
  CHECK_THROWS_AS(exact_highway_bruteforce(inst), BoundsRefused);

  MaxFSInstance mf;
  mf.n = 2;
  mf.rows = {{1, 2, 100, 100, Rat(1)}};
  CHECK_THROWS_AS(exact_maxfs(mf), BoundsRefused);
}

TEST_CASE("maxfs oracle with zero lower bounds takes everything") {
  MaxFSInstance inst;
  inst.n = 3;
  inst.rows = {{1, 2, 0, 3, Rat(2)}, {2, 3, 0, 1, Rat(5)}};
  auto r = exact_maxfs(inst);
  CHECK(r.opt_weight == Rat(7));
  CHECK(r.rows == std::vector<int>{0, 1});
  for (const auto& v : r.witness) CHECK(v == Rat(0));
}

TEST_CASE("maxfs oracle picks the heavier of two conflicting rows") {
  MaxFSInstance inst;
  inst.n = 1;
  inst.rows = {{1, 1, 2, 2, Rat(1)}, {1, 1, 3, 3, Rat(4)}};
  auto r = exact_maxfs(inst);
  CHECK(r.opt_weight == Rat(4));
  CHECK(r.rows == std::vector<int>{1});
  CHECK(r.witness == std::vector<Rat>{Rat(3)});
}

TEST_CASE("maxfs oracle matches exhaustive integer search") {
  SplitRng rng(17);
  for (int t = 0; t < 30; ++t) {
    MaxFSInstance inst;
    inst.n = 3;
    long long m = rng.uniform(1, 3);
    long long lmax = 0;
    for (long long j = 0; j < m; ++j) {
      long long a = rng.uniform(1, 3), b = rng.uniform(a, 3);
      long long lo = rng.uniform(0, 3), hi = rng.uniform(lo, 4);
      inst.rows.push_back({a, b, lo, hi, Rat(rng.uniform(1, 5))});
      if (lo > lmax) lmax = lo;
    }
    // integral witnesses in {0..l_max}^n suffice for interval systems
    long long cap = lmax;
    Rat best = 0;
    long long grid = (cap + 1) * (cap + 1) * (cap + 1);
    for (long long code = 0; code < grid; ++code) {
      long long w[3] = {code % (cap + 1), (code / (cap + 1)) % (cap + 1),
                        code / ((cap + 1) * (cap + 1))};
      Rat total = 0;
      for (const auto& r : inst.rows) {
        long long s = 0;
        for (long long e = r.left; e <= r.right; ++e) s += w[e - 1];
        if (s >= r.lower && s <= r.upper) total += r.profit;
      }
      if (total > best) best = total;
    }
    CHECK(exact_maxfs(inst).opt_weight == best);
  }
}

TEST_CASE("maxfs witness satisfies the selected rows") {
  SplitRng rng(5);
  for (int t = 0; t < 20; ++t) {
    MaxFSInstance inst;
    inst.n = 3;
    for (int j = 0; j < 3; ++j) {
      long long a = rng.uniform(1, 3), b = rng.uniform(a, 3);
      long long lo = rng.uniform(0, 4), hi = rng.uniform(lo, 5);
      inst.rows.push_back({a, b, lo, hi, Rat(rng.uniform(1, 4))});
    }
    auto r = exact_maxfs(inst);
    REQUIRE(r.witness.size() == 3);
    for (int j : r.rows) {
      const auto& row = inst.rows[static_cast<std::size_t>(j)];
      Rat s = 0;
      for (long long e = row.left; e <= row.right; ++e)
        s += r.witness[static_cast<std::size_t>(e - 1)];
      CHECK(s >= Rat(row.lower));
      CHECK(s <= Rat(row.upper));
    }
  }
}

TEST_CASE("relaxed maxfs dominates strict maxfs") {
  SplitRng rng(23);
  for (int t = 0; t < 10; ++t) {
    MaxFSInstance inst;
    inst.n = 2;
    for (int j = 0; j < 3; ++j) {
      long long a = rng.uniform(1, 2), b = rng.uniform(a, 2);
      long long lo = rng.uniform(0, 3), hi = rng.uniform(lo, 4);
      inst.rows.push_back({a, b, lo, hi, Rat(rng.uniform(1, 4))});
    }
    CHECK(exact_maxfs(inst, {}, Rat(3)).opt_weight >= exact_maxfs(inst).opt_weight);
  }
}

TEST_CASE("tollbooth oracle on a path equals the highway oracle") {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    HighwayInstance hw = generate_random(4, 3, 5, seed);
    TreeInstance t;
    t.n_nodes = static_cast<int>(hw.n_edges) + 1;
    t.source = 1;
    for (int v = 1; v <= static_cast<int>(hw.n_edges); ++v) t.edges.push_back({v, v + 1});
    for (const auto& d : hw.drivers)
      t.drivers.push_back({static_cast<int>(d.left), static_cast<int>(d.right) + 1, d.budget});
    CHECK(exact_tollbooth(t).opt == exact_highway_bruteforce(hw).opt);
  }
}

TEST_CASE("tollbooth oracle on a star with disjoint arms") {
  TreeInstance t;
  t.n_nodes = 4;
  t.source = 1;
  t.edges = {{1, 2}, {2, 3}, {2, 4}};
  t.drivers = {{2, 3, Rat(4)}, {2, 4, Rat(3)}};
  auto r = exact_tollbooth(t);
  CHECK(r.opt == Rat(7));
  CHECK(r.satisfied == std::vector<int>{0, 1});

  t.drivers.clear();
  CHECK(exact_tollbooth(t).opt == Rat(0));
}
