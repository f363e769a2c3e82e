#include <doctest.h>

#include "pathprice/errors.hpp"
#include "pathprice/instance.hpp"

using namespace pathprice;

namespace {

HighwayInstance three_driver_example() {
  HighwayInstance inst;
  inst.n_edges = 2;
  inst.drivers = {{1, 1, Rat(4)}, {2, 2, Rat(3)}, {1, 2, Rat(5)}};
  return inst;
}

}  // namespace

TEST_CASE("profit of the zero assignment is zero") {
  HighwayInstance inst = three_driver_example();
  WeightAssignment w{{Rat(0), Rat(0)}};
  CHECK(profit(inst, w) == Rat(0));
  CHECK(satisfied_set(inst, w) == std::vector<int>{0, 1, 2});
}

TEST_CASE("profit sums exactly the within-budget drivers") {
  HighwayInstance inst = three_driver_example();
  WeightAssignment w{{Rat(4), Rat(1)}};
  CHECK(profit(inst, w) == Rat(10));  // 4 + 1 + 5, all budgets met
}

TEST_CASE("a driver over budget pays nothing") {
  HighwayInstance inst;
  inst.n_edges = 1;
  inst.drivers = {{1, 1, Rat(3)}};
  WeightAssignment w{{Rat(4)}};
  CHECK(profit(inst, w) == Rat(0));
  CHECK(satisfied_set(inst, w).empty());
}

TEST_CASE("profit rejects a length mismatch") {
  HighwayInstance inst = three_driver_example();
  WeightAssignment w{{Rat(1)}};
  CHECK_THROWS_AS(profit(inst, w), InvalidInput);
}

TEST_CASE("segment structure around a single driver") {
  HighwayInstance inst;
  inst.n_edges = 4;
  inst.drivers = {{2, 3, Rat(1)}};
  auto s = segment_structure(inst).segments;
  REQUIRE(s.size() == 3);
  CHECK(s[0].first_edge == 1);
  CHECK(s[0].length == 1);
  CHECK(s[0].drivers.empty());
  CHECK(s[1].first_edge == 2);
  CHECK(s[1].length == 2);
  CHECK(s[1].drivers == std::vector<int>{0});
  CHECK(s[2].first_edge == 4);
  CHECK(s[2].length == 1);
}

TEST_CASE("segment structure with no drivers is one segment") {
  HighwayInstance inst;
  inst.n_edges = 3;
  auto s = segment_structure(inst).segments;
  REQUIRE(s.size() == 1);
  CHECK(s[0].first_edge == 1);
  CHECK(s[0].length == 3);
}

TEST_CASE("segment structure of two overlapping drivers") {
  HighwayInstance inst;
  inst.n_edges = 5;
  inst.drivers = {{1, 3, Rat(1)}, {3, 5, Rat(1)}};
  auto s = segment_structure(inst).segments;
  REQUIRE(s.size() == 3);
  CHECK(s[0].first_edge == 1);
  CHECK(s[0].length == 2);
  CHECK(s[0].drivers == std::vector<int>{0});
  CHECK(s[1].first_edge == 3);
  CHECK(s[1].length == 1);
  CHECK(s[1].drivers == std::vector<int>{0, 1});
  CHECK(s[2].first_edge == 4);
  CHECK(s[2].length == 2);
  CHECK(s[2].drivers == std::vector<int>{1});
}

TEST_CASE("segment count never exceeds 2m + 1") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    HighwayInstance inst = generate_random(6, 4, 5, seed);
    CHECK(segment_structure(inst).segments.size() <= 2 * inst.drivers.size() + 1);
  }
}

TEST_CASE("validate flags inverted and out-of-range drivers") {
  HighwayInstance inst;
  inst.n_edges = 3;
  inst.drivers = {{2, 1, Rat(1)}, {1, 4, Rat(1)}};
  auto v = validate(inst);
  REQUIRE(v.size() == 2);
  CHECK(v[0].find("driver 0") != std::string::npos);
  CHECK(v[1].find("driver 1") != std::string::npos);
  CHECK(validate(three_driver_example()).empty());
}

TEST_CASE("generator is seed deterministic") {
  HighwayInstance a = generate_random(3, 5, 4, 7);
  HighwayInstance b = generate_random(3, 5, 4, 7);
  REQUIRE(a.drivers.size() == b.drivers.size());
  for (std::size_t i = 0; i < a.drivers.size(); ++i) {
    CHECK(a.drivers[i].left == b.drivers[i].left);
    CHECK(a.drivers[i].right == b.drivers[i].right);
    CHECK(a.drivers[i].budget == b.drivers[i].budget);
  }
}

TEST_CASE("generator snapshot, seed 7") {
  HighwayInstance a = generate_random(3, 5, 4, 7);
  REQUIRE(a.drivers.size() == 5);
  long long want[5][3] = {{1, 1, 1}, {1, 2, 0}, {2, 2, 0}, {3, 3, 1}, {1, 2, 0}};
  for (int i = 0; i < 5; ++i) {
    CHECK(a.drivers[i].left == want[i][0]);
    CHECK(a.drivers[i].right == want[i][1]);
    CHECK(a.drivers[i].budget == Rat(want[i][2]));
  }
}

TEST_CASE("generator with m = 0 has no drivers") {
  CHECK(generate_random(3, 0, 4, 1).drivers.empty());
}

TEST_CASE("profit is bounded by the budget sum") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    HighwayInstance inst = generate_random(4, 3, 5, seed);
    Rat cap = 0;
    for (const auto& d : inst.drivers) cap += d.budget;
    SplitRng rng(seed * 131);
    WeightAssignment w;
    for (long long e = 0; e < inst.n_edges; ++e) w.weights.push_back(Rat(rng.uniform(0, 6)));
    CHECK(profit(inst, w) <= cap);
  }
}

TEST_CASE("redistribution inside a segment never changes profit") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    HighwayInstance inst = generate_random(5, 3, 5, seed);
    SplitRng rng(seed * 977);
    WeightAssignment w;
    for (long long e = 0; e < inst.n_edges; ++e) w.weights.push_back(Rat(rng.uniform(0, 4)));
    Rat before = profit(inst, w);
    for (const auto& s : segment_structure(inst).segments) {
      // push the whole segment total onto its first edge
      Rat total = 0;
      for (long long e = s.first_edge; e < s.first_edge + s.length; ++e) {
        total += w.weights[static_cast<std::size_t>(e - 1)];
        w.weights[static_cast<std::size_t>(e - 1)] = 0;
      }
      w.weights[static_cast<std::size_t>(s.first_edge - 1)] = total;
    }
    CHECK(profit(inst, w) == before);
  }
}

TEST_CASE("weight on an edge outside every driver never changes profit") {
  HighwayInstance inst;
  inst.n_edges = 3;
  inst.drivers = {{1, 1, Rat(2)}, {3, 3, Rat(1)}};
  WeightAssignment w{{Rat(2), Rat(0), Rat(1)}};
  Rat before = profit(inst, w);
  w.weights[1] = Rat(100);
  CHECK(profit(inst, w) == before);
}
