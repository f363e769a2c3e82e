#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pathprice/rational.hpp"

namespace pathprice {

// A driver occupies the closed edge range [left, right] (1-based) and pays
// its path weight iff it does not exceed the budget.
struct Driver {
  long long left = 0;
  long long right = 0;
  Rat budget;
};

struct HighwayInstance {
  long long n_edges = 0;
  std::vector<Driver> drivers;
};

struct WeightAssignment {
  std::vector<Rat> weights;  // one entry per edge
};

// Maximal edge runs contained in exactly the same set of drivers.
struct Segment {
  long long first_edge = 0;  // 1-based
  long long length = 0;
  std::vector<int> drivers;  // indices into HighwayInstance::drivers, sorted
};

struct SegmentStructure {
  std::vector<Segment> segments;  // partition of the edge set, left to right
};

// Sum of w(D_j) over drivers with w(D_j) <= b_j.  Throws InvalidInput on a
// length mismatch between weights and instance.
Rat profit(const HighwayInstance& inst, const WeightAssignment& w);

// Weight of a single driver under w (no budget check).
Rat driver_weight(const Driver& d, const WeightAssignment& w);

// Indices of drivers with w(D_j) <= b_j.
std::vector<int> satisfied_set(const HighwayInstance& inst, const WeightAssignment& w);

// The unique coarsest partition into elementary segments.
SegmentStructure segment_structure(const HighwayInstance& inst);

// Empty vector means the instance is well formed.
std::vector<std::string> validate(const HighwayInstance& inst);

// Seed-deterministic generator: left uniform in [1,n], right uniform in
// [left,n], integer budgets uniform in {0..max_budget}.
HighwayInstance generate_random(long long n, long long m, long long max_budget,
                                std::uint64_t seed);

// Deterministic bounded draw (rejection sampling on a 64-bit generator),
// shared by all generators so snapshots are platform independent.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
  std::uint64_t next();
  // uniform in [lo, hi], inclusive
  long long uniform(long long lo, long long hi);

 private:
  std::uint64_t state_;
};

}  // namespace pathprice
