#include "pathprice/oracle.hpp"

#include <algorithm>
#include <map>

#include "pathprice/errors.hpp"

namespace pathprice {

namespace {

long long floor_budget(const Rat& b) { return to_i64(rat_floor(b)); }

void check_highway_bounds(const HighwayInstance& inst, const OracleBounds& b) {
  if (inst.n_edges > b.max_edges)
    throw BoundsRefused("oracle refuses: edge count exceeds the configured bound");
  if (static_cast<long long>(inst.drivers.size()) > b.max_drivers)
    throw BoundsRefused("oracle refuses: driver count exceeds the configured bound");
  for (const auto& d : inst.drivers)
    if (floor_budget(d.budget) > b.max_budget)
      throw BoundsRefused("oracle refuses: budget exceeds the configured bound");
}

}  // namespace

HighwayOracleResult exact_highway_bruteforce(const HighwayInstance& inst,
                                             const OracleBounds& bounds) {
  auto violations = validate(inst);
  if (!violations.empty()) throw InvalidInput("oracle: " + violations.front());
  check_highway_bounds(inst, bounds);

  long long cap = 0;
  for (const auto& d : inst.drivers) cap = std::max(cap, floor_budget(d.budget));
  Int states = 1;
  for (long long i = 0; i < inst.n_edges; ++i) {
    states *= (cap + 1);
    if (states > bounds.max_states)
      throw BoundsRefused("oracle refuses: search space exceeds the state bound");
  }

  HighwayOracleResult best;
  best.opt = 0;
  best.weights.assign(static_cast<std::size_t>(inst.n_edges), 0);
  std::vector<long long> w(static_cast<std::size_t>(inst.n_edges), 0);
  WeightAssignment wa;
  wa.weights.assign(w.size(), Rat(0));
  bool first = true;
  while (true) {
    for (std::size_t i = 0; i < w.size(); ++i) wa.weights[i] = Rat(w[i]);
    Rat pr = profit(inst, wa);
    if (first || pr > best.opt) {
      first = false;
      best.opt = pr;
      best.weights = w;
      best.satisfied = satisfied_set(inst, wa);
    }
    // next vector in lexicographic order (last coordinate fastest)
    std::size_t i = w.size();
    while (i > 0 && w[i - 1] == cap) w[--i] = 0;
    if (i == 0) break;
    ++w[i - 1];
  }
  return best;
}

Rat exact_highway_sweep(const HighwayInstance& inst, const OracleBounds& bounds) {
  auto violations = validate(inst);
  if (!violations.empty()) throw InvalidInput("oracle: " + violations.front());
  check_highway_bounds(inst, bounds);

  long long cap = 0;
  std::vector<long long> bfloor;
  for (const auto& d : inst.drivers) {
    bfloor.push_back(floor_budget(d.budget));
    cap = std::max(cap, bfloor.back());
  }
  int m = static_cast<int>(inst.drivers.size());
  for (long long e = 1; e <= inst.n_edges; ++e) {
    Int worst = cap + 1;
    for (int j = 0; j < m; ++j)
      if (inst.drivers[j].left <= e && inst.drivers[j].right >= e)
        worst *= (bfloor[static_cast<std::size_t>(j)] + 2);
    if (worst > bounds.max_states)
      throw BoundsRefused("oracle refuses: sweep state space exceeds the state bound");
  }

  // state: accumulated weight per open driver, capped at floor(b_j)+1
  std::map<std::vector<long long>, long long> cur;
  cur[std::vector<long long>(static_cast<std::size_t>(m), 0)] = 0;
  for (long long e = 1; e <= inst.n_edges; ++e) {
    std::map<std::vector<long long>, long long> next;
    for (const auto& [state, value] : cur) {
      for (long long t = 0; t <= cap; ++t) {
        std::vector<long long> ns = state;
        long long gained = 0;
        for (int j = 0; j < m; ++j) {
          const auto& d = inst.drivers[static_cast<std::size_t>(j)];
          if (d.left <= e && d.right >= e) {
            ns[static_cast<std::size_t>(j)] =
                std::min(ns[static_cast<std::size_t>(j)] + t,
                         bfloor[static_cast<std::size_t>(j)] + 1);
          }
          if (d.right == e) {
            long long acc = ns[static_cast<std::size_t>(j)];
            if (Rat(acc) <= d.budget) gained += acc;
            ns[static_cast<std::size_t>(j)] = 0;
          }
        }
        auto it = next.find(ns);
        if (it == next.end() || it->second < value + gained) next[ns] = value + gained;
      }
    }
    cur = std::move(next);
  }
  long long opt = 0;
  for (const auto& [state, value] : cur) opt = std::max(opt, value);
  return Rat(opt);
}

MaxFSOracleResult exact_maxfs(const MaxFSInstance& inst, const OracleBounds& bounds,
                              const Rat& rho) {
  auto violations = validate(inst);
  if (!violations.empty()) throw InvalidInput("oracle: " + violations.front());
  if (rho < 1) throw InvalidParameter("relaxation factor must be >= 1");
  int m = static_cast<int>(inst.rows.size());
  if (inst.n > bounds.max_edges)
    throw BoundsRefused("oracle refuses: column count exceeds the configured bound");
  if (m > bounds.max_drivers)
    throw BoundsRefused("oracle refuses: row count exceeds the configured bound");
  for (const auto& r : inst.rows)
    if (r.lower > bounds.max_budget)
      throw BoundsRefused("oracle refuses: lower bound exceeds the configured bound");

  // all subsets, ordered by total profit descending, ties by lexicographic
  // row-index list
  std::vector<std::pair<Rat, std::vector<int>>> subsets;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    Rat wsum = 0;
    std::vector<int> rows;
    for (int j = 0; j < m; ++j)
      if (mask & (1u << j)) {
        wsum += inst.rows[static_cast<std::size_t>(j)].profit;
        rows.push_back(j);
      }
    subsets.push_back({wsum, std::move(rows)});
  }
  std::stable_sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });

  // feasibility of a subset: difference constraints over monotone prefix sums
  // p_0..p_n, solved by Bellman-Ford (negative cycle = infeasible)
  long long nv = inst.n + 1;
  auto feasible = [&](const std::vector<int>& rows, std::vector<Rat>* witness) {
    struct Edge {
      long long u, v;
      Rat w;
    };
    std::vector<Edge> edges;
    for (long long i = 1; i < nv; ++i) edges.push_back({i, i - 1, Rat(0)});  // p_{i-1} <= p_i
    for (int j : rows) {
      const auto& r = inst.rows[static_cast<std::size_t>(j)];
      edges.push_back({r.left - 1, r.right, Rat(r.upper) * rho});   // p_r - p_{l-1} <= rho*u
      edges.push_back({r.right, r.left - 1, -Rat(r.lower) / rho});  // p_{l-1} - p_r <= -l/rho
    }
    std::vector<Rat> dist(static_cast<std::size_t>(nv), Rat(0));
    for (long long it = 0; it < nv; ++it) {
      bool changed = false;
      for (const auto& e : edges) {
        Rat cand = dist[static_cast<std::size_t>(e.u)] + e.w;
        if (cand < dist[static_cast<std::size_t>(e.v)]) {
          dist[static_cast<std::size_t>(e.v)] = cand;
          changed = true;
        }
      }
      if (!changed) break;
      if (it == nv - 1) return false;  // still relaxing: negative cycle
    }
    if (witness) {
      witness->assign(static_cast<std::size_t>(inst.n), Rat(0));
      for (long long i = 1; i < nv; ++i)
        (*witness)[static_cast<std::size_t>(i - 1)] =
            dist[static_cast<std::size_t>(i)] - dist[static_cast<std::size_t>(i - 1)];
    }
    return true;
  };

  for (const auto& [wsum, rows] : subsets) {
    std::vector<Rat> witness;
    if (feasible(rows, &witness)) {
      MaxFSOracleResult res;
      res.opt_weight = wsum;
      res.rows = rows;
      res.witness = std::move(witness);
      return res;
    }
  }
  throw InternalError("the empty subsystem must be feasible");
}

TreeOracleResult exact_tollbooth(const TreeInstance& inst, const OracleBounds& bounds) {
  auto violations = validate(inst, 1 << 20);
  if (!violations.empty()) throw InvalidInput("oracle: " + violations.front());
  long long n = static_cast<long long>(inst.edges.size());
  if (n > bounds.max_edges)
    throw BoundsRefused("oracle refuses: edge count exceeds the configured bound");
  if (static_cast<long long>(inst.drivers.size()) > bounds.max_drivers)
    throw BoundsRefused("oracle refuses: driver count exceeds the configured bound");
  long long cap = 0;
  for (const auto& d : inst.drivers) {
    long long f = floor_budget(d.budget);
    if (f > bounds.max_budget)
      throw BoundsRefused("oracle refuses: budget exceeds the configured bound");
    cap = std::max(cap, f);
  }
  Int states = 1;
  for (long long i = 0; i < n; ++i) {
    states *= (cap + 1);
    if (states > bounds.max_states)
      throw BoundsRefused("oracle refuses: search space exceeds the state bound");
  }

  TreeOracleResult best;
  best.opt = 0;
  best.weights.assign(static_cast<std::size_t>(n), 0);
  std::vector<long long> w(static_cast<std::size_t>(n), 0);
  WeightAssignment wa;
  wa.weights.assign(w.size(), Rat(0));
  bool first = true;
  while (true) {
    for (std::size_t i = 0; i < w.size(); ++i) wa.weights[i] = Rat(w[i]);
    Rat pr = tree_profit(inst, wa);
    if (first || pr > best.opt) {
      first = false;
      best.opt = pr;
      best.weights = w;
      best.satisfied = tree_satisfied_set(inst, wa);
    }
    std::size_t i = w.size();
    while (i > 0 && w[i - 1] == cap) w[--i] = 0;
    if (i == 0) break;
    ++w[i - 1];
  }
  return best;
}

}  // namespace pathprice
