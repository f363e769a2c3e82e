#include "pathprice/instance.hpp"

#include <algorithm>

#include "pathprice/errors.hpp"

namespace pathprice {

Rat driver_weight(const Driver& d, const WeightAssignment& w) {
  Rat sum = 0;
  for (long long e = d.left; e <= d.right; ++e) sum += w.weights[static_cast<std::size_t>(e - 1)];
  return sum;
}

Rat profit(const HighwayInstance& inst, const WeightAssignment& w) {
  if (static_cast<long long>(w.weights.size()) != inst.n_edges)
    throw InvalidInput("weight vector length does not match edge count");
  Rat total = 0;
  for (const auto& d : inst.drivers) {
    Rat wd = driver_weight(d, w);
    if (wd <= d.budget) total += wd;
  }
  return total;
}

std::vector<int> satisfied_set(const HighwayInstance& inst, const WeightAssignment& w) {
  if (static_cast<long long>(w.weights.size()) != inst.n_edges)
    throw InvalidInput("weight vector length does not match edge count");
  std::vector<int> out;
  for (int j = 0; j < static_cast<int>(inst.drivers.size()); ++j)
    if (driver_weight(inst.drivers[j], w) <= inst.drivers[j].budget) out.push_back(j);
  return out;
}

SegmentStructure segment_structure(const HighwayInstance& inst) {
  // Boundary before edge e: some driver starts at e or ends at e-1.
  std::vector<char> boundary(static_cast<std::size_t>(inst.n_edges) + 2, 0);
  boundary[1] = 1;
  for (const auto& d : inst.drivers) {
    boundary[static_cast<std::size_t>(d.left)] = 1;
    if (d.right + 1 <= inst.n_edges) boundary[static_cast<std::size_t>(d.right) + 1] = 1;
  }
  SegmentStructure ss;
  long long start = 1;
  for (long long e = 2; e <= inst.n_edges + 1; ++e) {
    if (e == inst.n_edges + 1 || boundary[static_cast<std::size_t>(e)]) {
      Segment s;
      s.first_edge = start;
      s.length = e - start;
      for (int j = 0; j < static_cast<int>(inst.drivers.size()); ++j)
        if (inst.drivers[j].left <= start && inst.drivers[j].right >= e - 1)
          s.drivers.push_back(j);
      ss.segments.push_back(std::move(s));
      start = e;
    }
  }
  return ss;
}

std::vector<std::string> validate(const HighwayInstance& inst) {
  std::vector<std::string> out;
  if (inst.n_edges < 1) out.push_back("n_edges must be at least 1");
  for (int j = 0; j < static_cast<int>(inst.drivers.size()); ++j) {
    const auto& d = inst.drivers[j];
    if (d.left < 1) out.push_back("driver " + std::to_string(j) + ": left < 1");
    if (d.right < d.left) out.push_back("driver " + std::to_string(j) + ": right < left");
    if (d.right > inst.n_edges) out.push_back("driver " + std::to_string(j) + ": right > n_edges");
    if (d.budget < 0) out.push_back("driver " + std::to_string(j) + ": negative budget");
  }
  return out;
}

std::uint64_t SplitRng::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

long long SplitRng::uniform(long long lo, long long hi) {
  if (lo > hi) throw InvalidParameter("uniform: empty range");
  std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  if (range == 0) return lo + static_cast<long long>(next());  // full 64-bit range
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
  std::uint64_t v = next();
  while (v >= limit) v = next();
  return lo + static_cast<long long>(v % range);
}

HighwayInstance generate_random(long long n, long long m, long long max_budget,
                                std::uint64_t seed) {
  if (n < 1 || m < 0 || max_budget < 0)
    throw InvalidParameter("generate_random: need n >= 1, m >= 0, max_budget >= 0");
  SplitRng rng(seed);
  HighwayInstance inst;
  inst.n_edges = n;
  for (long long j = 0; j < m; ++j) {
    Driver d;
    d.left = rng.uniform(1, n);
    d.right = rng.uniform(d.left, n);
    d.budget = Rat(rng.uniform(0, max_budget));
    inst.drivers.push_back(d);
  }
  return inst;
}

}  // namespace pathprice
