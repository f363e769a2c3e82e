#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pathprice/instance.hpp"
#include "pathprice/params.hpp"
#include "pathprice/report.hpp"

namespace pathprice {

struct TreeDriver {
  int u = 0, v = 0;  // endpoints (nodes, 1-based); the path is unique
  Rat budget;
};

// Tree pricing instance with a constant number of leaves.  The source is a
// designated leaf; the other leaves are sinks.
struct TreeInstance {
  int n_nodes = 0;
  std::vector<std::pair<int, int>> edges;  // n_nodes - 1 entries
  int source = 0;
  std::vector<TreeDriver> drivers;
};

std::vector<std::string> validate(const TreeInstance& inst, int max_leaves = 4);

int leaf_count(const TreeInstance& inst);

// Edge indices (into inst.edges) of the unique u-v path.
std::vector<int> tree_path_edges(const TreeInstance& inst, int u, int v);

Rat tree_profit(const TreeInstance& inst, const WeightAssignment& w);
std::vector<int> tree_satisfied_set(const TreeInstance& inst, const WeightAssignment& w);

// ---- dissection primitives on small rooted trees (exhaustive, test scale) --

// Rooted tree, nodes 0..n-1, node 0 is the root/source; edge i = (parent[i], i)
// for i >= 1.
struct SmallTree {
  std::vector<int> parent;  // parent[0] = -1
};

struct ForestPartition {
  std::vector<int> splits;              // split node ids, ascending
  std::vector<std::vector<int>> parts;  // per component: sorted edge ids
  std::vector<int> part_source;         // node of the component closest to the root
};

// Every split-node set with at most gamma-1 splits on each root-to-leaf path,
// in a fixed deterministic order (subsets of eligible nodes, lexicographic).
std::vector<ForestPartition> enumerate_tree_dissections(const SmallTree& t,
                                                        long long gamma);

// Number of components containing exactly one full source-sink path of the
// component inside the driver's edge set.
long long crossing_count(const std::vector<int>& driver_edges, const SmallTree& t,
                         const ForestPartition& f);

// ---- solver ----------------------------------------------------------------

struct TollboothOptions {
  Params params;
  SolveMode mode = SolveMode::Derandomized;
  std::uint64_t seed = 1;
  int max_leaves = 4;
  bool audit = false;
};

// Randomized-dissection PTAS for trees with a constant number of leaves: well-round on
// tree edges, pad sinks and source, guess W~, run the subtree DP, scale by
// delta/(delta+4), lift, evaluate.
SolveReport run_tollbooth(const TreeInstance& inst, const TollboothOptions& opt);

// One fixed (W~, x, y) run with the full table exposed; used by the
// tollbooth/highway coherence tests.  `path_entries` is populated only for
// theta = 2 instances, with subpaths in left-to-right bounded-line
// coordinates (source pad first).
struct TollboothTableEntry {
  long long a = 0, b = 0;
  int level = 0;
  bool feasible = false;
  long long value = 0;
};

struct TollboothDebugRun {
  long long w_star = 0, x = 0, y = 0, base_w = 0, w_prime = 0;
  bool root_feasible = false;
  long long root_value = 0;
  std::vector<TollboothTableEntry> path_entries;
  // reconstructed 0/1 weights on the bounded line (theta = 2 only), sparse
  std::vector<std::pair<long long, long long>> path_weights;
};

TollboothDebugRun tollbooth_debug_run(const TreeInstance& inst,
                                      const TollboothOptions& opt,
                                      long long w_star, long long x, long long y);

}  // namespace pathprice
