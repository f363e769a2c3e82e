#include <doctest.h>

#include "pathprice/errors.hpp"
#include "pathprice/maxfs.hpp"
#include "pathprice/oracle.hpp"

using namespace pathprice;

namespace {

MaxFSInstance single_row(long long lo, long long hi, Rat v = Rat(1)) {
  MaxFSInstance inst;
  inst.n = 1;
  inst.rows = {{1, 1, lo, hi, v}};
  return inst;
}

}  // namespace

TEST_CASE("profit rounding scales to m over eps") {
  MaxFSInstance inst;
  inst.n = 2;
  inst.rows = {{1, 1, 0, 1, Rat(1)}, {1, 2, 0, 2, Rat(3)}};
  ReducedMaxFS red = reduce_weights(inst, make_eps(Rat(1, 2)));
  CHECK(red.profit_scale == Rat(4, 3));  // (m/eps)/v_max
  CHECK(red.int_profit == std::vector<long long>{1, 4});
  REQUIRE(red.unit.rows.size() == 5);
  CHECK(red.row_of == std::vector<int>{0, 1, 1, 1, 1});
  for (const auto& r : red.unit.rows) CHECK(r.profit == Rat(1));
  CHECK_FALSE(red.trivial);
}

TEST_CASE("all-zero profits are trivial") {
  MaxFSInstance inst = single_row(0, 1, Rat(0));
  CHECK(reduce_weights(inst, make_eps(Rat(1, 2))).trivial);
}

TEST_CASE("duplication and pads") {
  MaxFSInstance unit = single_row(1, 2);  // already a unit-profit system
  Params p = make_params(Rat(1, 2));
  WellRoundedMaxFS wr = well_round_maxfs(unit, p, 2);
  CHECK(wr.dup == 8);  // gamma * ell * m
  CHECK(wr.pad == 1);
  CHECK(wr.line.n_edges == 10);
  REQUIRE(wr.origin_map.size() == 1);
  CHECK(wr.origin_map[0] == std::pair<long long, long long>{2, 9});
  // drivers stay clear of the pads and scale their bounds by dup
  for (const auto& d : wr.line.drivers) {
    CHECK(d.left >= 2);
    CHECK(d.right <= 9);
  }
}

TEST_CASE("extra pad room is honoured") {
  MaxFSInstance unit = single_row(1, 2);
  Params p = make_params(Rat(1, 2));
  WellRoundedMaxFS wr = well_round_maxfs(unit, p, 2, 5);
  CHECK(wr.pad == 6);
  CHECK(wr.line.n_edges == 20);
}

TEST_CASE("all lower bounds zero select every row at w = 0") {
  MaxFSInstance inst;
  inst.n = 2;
  inst.rows = {{1, 1, 0, 3, Rat(2)}, {1, 2, 0, 5, Rat(3)}, {2, 2, 0, 1, Rat(1)}};
  MaxFSOptions opt;
  opt.params = make_params(Rat(1, 2));
  MaxFSResult res = run_maxfs(inst, opt);
  for (const auto& w : res.weights.weights) CHECK(w == Rat(0));
  CHECK(res.rows == std::vector<int>{0, 1, 2});
  CHECK(res.weighted_count == Rat(6));
}

TEST_CASE("a single tight row is met within the violation factor") {
  MaxFSInstance inst = single_row(5, 5);
  MaxFSOptions opt;
  opt.params = make_params(Rat(1, 2));
  MaxFSResult res = run_maxfs(inst, opt);
  CHECK(res.violation_factor == Rat(9));  // ((delta+2)/delta)^2 at eps = 1/2
  REQUIRE(res.rows == std::vector<int>{0});
  // pre-finalization the relaxed bounds hold, post-finalization the lower
  // bound holds exactly and the upper is violated by at most the factor
  CHECK(res.achieved[0] >= Rat(5, 3));
  CHECK(res.achieved[0] <= Rat(15));
  Rat post = res.achieved[0] * Rat(3);
  CHECK(post >= Rat(5));
  CHECK(post <= Rat(45));
  // finalized really is the scaled weight vector
  for (std::size_t i = 0; i < res.weights.weights.size(); ++i)
    CHECK(res.finalized.weights[i] == res.weights.weights[i] * Rat(3));
}

TEST_CASE("relaxation reconciles strictly incompatible rows") {
  MaxFSInstance inst;
  inst.n = 1;
  inst.rows = {{1, 1, 2, 2, Rat(1)}, {1, 1, 3, 3, Rat(1)}};
  // strictly, only one row fits
  CHECK(exact_maxfs(inst).opt_weight == Rat(1));
  // relaxed by rho = 3, both do
  Rat relaxed_opt = exact_maxfs(inst, {}, Rat(3)).opt_weight;
  CHECK(relaxed_opt == Rat(2));
  MaxFSOptions opt;
  opt.params = make_params(Rat(1, 2));
  MaxFSResult res = run_maxfs(inst, opt);
  CHECK(res.weighted_count <= relaxed_opt);
  for (int j : res.rows) {
    const auto& r = inst.rows[static_cast<std::size_t>(j)];
    Rat post = res.achieved[static_cast<std::size_t>(j)] * Rat(3);
    CHECK(post >= Rat(r.lower));
    CHECK(post <= Rat(9) * Rat(r.upper));
  }
}

TEST_CASE("validation flags bad rows") {
  MaxFSInstance inst;
  inst.n = 2;
  inst.rows = {{2, 1, 0, 1, Rat(1)}, {1, 2, 3, 2, Rat(1)}, {1, 3, 0, 1, Rat(1)},
               {1, 1, 0, 1, Rat(-1)}};
  CHECK(validate(inst).size() == 4);
  inst.rows = {{1, 2, 0, 1, Rat(1)}};
  CHECK(validate(inst).empty());
}

TEST_CASE("root value dominates the oracle-guided count") {
  MaxFSInstance inst;
  inst.n = 2;
  inst.rows = {{1, 1, 1, 2, Rat(1)}, {1, 2, 0, 4, Rat(1)}};
  Params p = make_params(Rat(1, 2));
  auto orc = exact_maxfs(inst);
  std::vector<long long> w_orig;
  for (const auto& r : orc.witness) {
    REQUIRE(denominator(r) == 1);
    w_orig.push_back(static_cast<long long>(numerator(r)));
  }
  long long ell = 1;  // l_max = 1
  long long w_star = 4;  // gamma^ell
  for (long long y = 1; y <= 2; ++y) {
    DpVal phi = maxfs_root_value(inst, p, w_star, y);
    REQUIRE(phi.feasible);
    for (long long x = 1; x <= w_star; ++x)
      CHECK(phi.value >= maxfs_dissection_count(inst, p, w_orig, orc.rows, w_star, x, y));
  }
  (void)ell;
}
