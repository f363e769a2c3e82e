#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "pathprice/errors.hpp"

namespace pathprice {

// Weight placement regime of the dynamic program.
//   ZeroOne: w: P -> {0,1} (highway after well-rounding), profit objective.
//   Integer: w: P -> Z>=0 (MaxFS), count objective with two-sided bounds and
//            truncation at driver-free paths.
enum class DpWeights { ZeroOne, Integer };

// Elementary segment of the bounded line: a maximal edge run contained in
// exactly the same set of drivers.
struct LineSeg {
  long long first = 0;  // 1-based
  long long len = 0;
  std::vector<int> drivers;
};

struct LineDrv {
  long long left = 0, right = 0;  // edge range on the bounded line
  long long budget = 0;           // ZeroOne mode
  long long lower = 0, upper = 0; // Integer mode; lower is relaxed by delta/(delta+2)
  int tag = -1;                   // caller-side id
};

struct LineProblem {
  long long n_edges = 0;
  std::vector<LineSeg> segments;  // partition of 1..n_edges, left to right
  std::vector<LineDrv> drivers;
  DpWeights mode = DpWeights::ZeroOne;
};

struct DpVal {
  bool feasible = false;
  long long value = 0;
};

struct DpRecord {
  enum Kind { BaseSatisfied, GoodDriver } kind = BaseSatisfied;
  int driver = -1;          // index into LineProblem::drivers
  int tag = -1;
  long long n_parts = 0;    // GoodDriver: parts fully inside the driver
  long long credit = 0;     // contribution to the table value
  long long weight_full = 0;  // w'(D_j) under the reconstructed weights
};

struct DpResult {
  long long root_value = 0;
  // Sparse reconstructed weights, (edge, weight), ascending by edge.
  std::vector<std::pair<long long, long long>> weights;
  std::vector<DpRecord> records;
};

// Two-level dynamic program over subpaths of a bounded line: base entries by
// composition enumeration over elementary segments, upper levels by gamma-ary
// partitions with good-driver credits.  Tie-breaking is lexicographic in cut
// tuples and composition vectors.
//
// In compressed mode (the default) table keys are canonicalized to
// (endpoint segments, boundary flags, residual capacities clamped at the
// level weight) and cut enumeration is restricted to a value-preserving
// candidate set; the exhaustive mode keeps edge-granular keys and enumerates
// every cut tuple, and exists as the oracle for the equivalence tests.
class LineDp {
 public:
  LineDp(LineProblem prob, long long gamma, long long delta, long long base_w,
         long long w_prime, bool compressed = true);

  DpVal root() { return value(1, prob_.n_edges, 0); }
  DpVal value(long long a, long long b, int level);
  int levels() const { return levels_; }
  long long level_weight(int q) const;

  // Base entry: best placement of total weight c on [a,b].  `keep` optionally
  // restricts the driver set (size = drivers.size()).
  DpVal base_value(long long a, long long b, long long c,
                   const std::vector<char>* keep = nullptr) const;

  DpResult reconstruct();  // requires a feasible root

  std::size_t table_entries() const { return memo_.size(); }
  std::size_t feasible_entries() const { return feasible_count_; }
  long long tie_count() const { return ties_; }

  const LineProblem& problem() const { return prob_; }

 private:
  struct Key {
    int q;
    int sa, sb;
    bool fa, fb;  // path endpoint sits on a segment boundary
    long long ca, cb;  // clamped residual capacities
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const;
  };

  Key make_key(long long a, long long b, int q) const;
  int seg_of(long long edge) const;
  DpVal step_value(long long a, long long b, int q);
  std::vector<long long> step_argmax(long long a, long long b, int q);
  std::vector<int> contained_drivers(long long a, long long b) const;
  bool driver_free(long long a, long long b) const;
  long long credits_for(long long a, long long b,
                        const std::vector<long long>& cuts, long long wc,
                        std::vector<DpRecord>* out) const;
  long long clamp_at(int q) const;
  std::vector<long long> cut_candidates(long long a, long long b, int q) const;
  void enumerate_cuts(long long a, long long b, int q, long long wc,
                      bool want_argmax, DpVal& best,
                      std::vector<long long>& best_cuts);

  // reconstruction helpers
  void rec_path(long long a, long long b, int q, DpResult& out,
                long long& accounted);
  void place_composition(long long a, long long b,
                         const std::vector<long long>& counts,
                         DpResult& out) const;
  std::vector<long long> greedy_right_composition(long long a, long long b,
                                                  long long c) const;
  struct BaseBest {
    bool feasible = false;
    long long value = 0;
    std::vector<long long> counts;
  };
  BaseBest base_best(long long a, long long b, long long c,
                     const std::vector<char>* keep) const;

  LineProblem prob_;
  long long gamma_, delta_, base_w_, w_prime_;
  int levels_ = 0;
  bool compressed_;
  std::unordered_map<Key, DpVal, KeyHash> memo_;
  std::size_t feasible_count_ = 0;
  long long ties_ = 0;
};

// Standalone base operation, exposed for the compression-equivalence tests:
// best profit of placing total weight c on the subpath [a,b] of `prob`.
DpVal base_profit(const LineProblem& prob, long long a, long long b,
                  long long c);

}  // namespace pathprice
