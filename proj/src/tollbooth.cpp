#include "pathprice/tollbooth.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "pathprice/dissection.hpp"
#include "pathprice/errors.hpp"
#include "pathprice/linedp.hpp"
#include "pathprice/io.hpp"

namespace pathprice {

namespace {

std::vector<std::vector<int>> adjacency(const TreeInstance& inst) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(inst.n_nodes) + 1);
  for (const auto& [u, v] : inst.edges) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

}  // namespace

std::vector<std::string> validate(const TreeInstance& inst, int max_leaves) {
  std::vector<std::string> out;
  if (inst.n_nodes < 2) {
    out.push_back("a tree instance needs at least two nodes");
    return out;
  }
  if (static_cast<int>(inst.edges.size()) != inst.n_nodes - 1)
    out.push_back("a tree on n nodes has exactly n-1 edges");
  std::set<std::pair<int, int>> seen;
  for (const auto& [u, v] : inst.edges) {
    if (u < 1 || u > inst.n_nodes || v < 1 || v > inst.n_nodes || u == v) {
      out.push_back("edge endpoints must be distinct nodes in range");
      return out;
    }
    auto key = std::minmax(u, v);
    if (!seen.insert({key.first, key.second}).second) out.push_back("duplicate edge");
  }
  if (!out.empty()) return out;
  // connectivity (acyclicity follows from the edge count)
  auto adj = adjacency(inst);
  std::vector<char> vis(static_cast<std::size_t>(inst.n_nodes) + 1, 0);
  std::queue<int> q;
  q.push(1);
  vis[1] = 1;
  int cnt = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : adj[static_cast<std::size_t>(u)])
      if (!vis[static_cast<std::size_t>(v)]) {
        vis[static_cast<std::size_t>(v)] = 1;
        ++cnt;
        q.push(v);
      }
  }
  if (cnt != inst.n_nodes) {
    out.push_back("the edge set is not connected");
    return out;
  }
  if (inst.source < 1 || inst.source > inst.n_nodes ||
      adj[static_cast<std::size_t>(inst.source)].size() != 1)
    out.push_back("the source must be a leaf");
  if (leaf_count(inst) > max_leaves)
    out.push_back("leaf count exceeds the configured maximum of " + std::to_string(max_leaves));
  for (std::size_t j = 0; j < inst.drivers.size(); ++j) {
    const auto& d = inst.drivers[j];
    std::string who = "driver " + std::to_string(j);
    if (d.u < 1 || d.u > inst.n_nodes || d.v < 1 || d.v > inst.n_nodes)
      out.push_back(who + ": endpoints out of range");
    else if (d.u == d.v)
      out.push_back(who + ": the path must contain at least one edge");
    if (d.budget < 0) out.push_back(who + ": budget must be non-negative");
  }
  return out;
}

int leaf_count(const TreeInstance& inst) {
  auto adj = adjacency(inst);
  int cnt = 0;
  for (int v = 1; v <= inst.n_nodes; ++v)
    if (adj[static_cast<std::size_t>(v)].size() == 1) ++cnt;
  return cnt;
}

std::vector<int> tree_path_edges(const TreeInstance& inst, int u, int v) {
  // edge index lookup
  std::map<std::pair<int, int>, int> eid;
  for (int i = 0; i < static_cast<int>(inst.edges.size()); ++i) {
    auto key = std::minmax(inst.edges[static_cast<std::size_t>(i)].first,
                           inst.edges[static_cast<std::size_t>(i)].second);
    eid[{key.first, key.second}] = i;
  }
  auto adj = adjacency(inst);
  std::vector<int> par(static_cast<std::size_t>(inst.n_nodes) + 1, 0);
  std::vector<char> vis(static_cast<std::size_t>(inst.n_nodes) + 1, 0);
  std::queue<int> q;
  q.push(u);
  vis[static_cast<std::size_t>(u)] = 1;
  while (!q.empty()) {
    int a = q.front();
    q.pop();
    for (int b : adj[static_cast<std::size_t>(a)])
      if (!vis[static_cast<std::size_t>(b)]) {
        vis[static_cast<std::size_t>(b)] = 1;
        par[static_cast<std::size_t>(b)] = a;
        q.push(b);
      }
  }
  if (!vis[static_cast<std::size_t>(v)]) throw InvalidInput("path endpoints are not connected");
  std::vector<int> out;
  for (int w = v; w != u; w = par[static_cast<std::size_t>(w)]) {
    auto key = std::minmax(w, par[static_cast<std::size_t>(w)]);
    out.push_back(eid.at({key.first, key.second}));
  }
  std::reverse(out.begin(), out.end());
  return out;
}

Rat tree_profit(const TreeInstance& inst, const WeightAssignment& w) {
  if (w.weights.size() != inst.edges.size())
    throw InvalidInput("weight vector length must match the edge count");
  Rat total = 0;
  for (const auto& d : inst.drivers) {
    Rat wj = 0;
    for (int e : tree_path_edges(inst, d.u, d.v)) wj += w.weights[static_cast<std::size_t>(e)];
    if (wj <= d.budget) total += wj;
  }
  return total;
}

std::vector<int> tree_satisfied_set(const TreeInstance& inst, const WeightAssignment& w) {
  if (w.weights.size() != inst.edges.size())
    throw InvalidInput("weight vector length must match the edge count");
  std::vector<int> out;
  for (int j = 0; j < static_cast<int>(inst.drivers.size()); ++j) {
    const auto& d = inst.drivers[static_cast<std::size_t>(j)];
    Rat wj = 0;
    for (int e : tree_path_edges(inst, d.u, d.v)) wj += w.weights[static_cast<std::size_t>(e)];
    if (wj <= d.budget) out.push_back(j);
  }
  return out;
}

// ---- small rooted-tree primitives ------------------------------------------

namespace {

std::vector<std::vector<int>> small_kids(const SmallTree& t) {
  std::vector<std::vector<int>> kids(t.parent.size());
  for (int v = 1; v < static_cast<int>(t.parent.size()); ++v)
    kids[static_cast<std::size_t>(t.parent[static_cast<std::size_t>(v)])].push_back(v);
  return kids;
}

void small_leaf_paths(const SmallTree& t, int root_to, std::vector<int>* leaves) {
  auto kids = small_kids(t);
  for (int v = 0; v < static_cast<int>(t.parent.size()); ++v)
    if (kids[static_cast<std::size_t>(v)].empty()) leaves->push_back(v);
  (void)root_to;
}

ForestPartition make_partition(const SmallTree& t, const std::vector<int>& splits) {
  int n = static_cast<int>(t.parent.size());
  std::vector<char> is_split(static_cast<std::size_t>(n), 0);
  for (int s : splits) is_split[static_cast<std::size_t>(s)] = 1;
  // governing source of each node: nearest ancestor-or-self in splits u {root}
  std::vector<int> g(static_cast<std::size_t>(n), 0);
  for (int v = 1; v < n; ++v)
    g[static_cast<std::size_t>(v)] =
        is_split[static_cast<std::size_t>(v)] ? v
                                              : g[static_cast<std::size_t>(t.parent[static_cast<std::size_t>(v)])];
  // edge v belongs to the component sourced at g(parent(v))
  std::map<int, std::vector<int>> comps;
  comps[0];  // the root component exists even if empty
  for (int s : splits) comps[s];
  for (int v = 1; v < n; ++v)
    comps[g[static_cast<std::size_t>(t.parent[static_cast<std::size_t>(v)])]].push_back(v);
  ForestPartition f;
  f.splits = splits;
  for (auto& [src, edges] : comps) {
    std::sort(edges.begin(), edges.end());
    f.part_source.push_back(src);
    f.parts.push_back(edges);
  }
  return f;
}

}  // namespace

std::vector<ForestPartition> enumerate_tree_dissections(const SmallTree& t,
                                                        long long gamma) {
  if (gamma < 2) throw InvalidParameter("gamma must be at least 2");
  if (t.parent.empty() || t.parent[0] != -1)
    throw InvalidInput("the root must be node 0 with parent -1");
  auto kids = small_kids(t);
  int n = static_cast<int>(t.parent.size());
  std::vector<int> eligible;  // internal non-root nodes; splitting at a leaf
                              // would create an empty part
  for (int v = 1; v < n; ++v)
    if (!kids[static_cast<std::size_t>(v)].empty()) eligible.push_back(v);
  std::vector<int> leaves;
  small_leaf_paths(t, 0, &leaves);
  // splits on the root path of each leaf
  std::vector<std::vector<int>> on_path(eligible.size());
  for (std::size_t i = 0; i < eligible.size(); ++i) {
    for (std::size_t l = 0; l < leaves.size(); ++l) {
      for (int v = leaves[l]; v != -1; v = t.parent[static_cast<std::size_t>(v)])
        if (v == eligible[i]) {
          on_path[i].push_back(static_cast<int>(l));
          break;
        }
    }
  }
  std::vector<ForestPartition> out;
  std::vector<long long> cnt(leaves.size(), 0);
  std::vector<int> cur;
  auto rec = [&](auto&& self, std::size_t idx) -> void {
    out.push_back(make_partition(t, cur));
    for (std::size_t i = idx; i < eligible.size(); ++i) {
      bool ok = true;
      for (int l : on_path[i])
        if (cnt[static_cast<std::size_t>(l)] + 1 > gamma - 1) ok = false;
      if (!ok) continue;
      for (int l : on_path[i]) ++cnt[static_cast<std::size_t>(l)];
      cur.push_back(eligible[i]);
      self(self, i + 1);
      cur.pop_back();
      for (int l : on_path[i]) --cnt[static_cast<std::size_t>(l)];
    }
  };
  rec(rec, 0);
  return out;
}

long long crossing_count(const std::vector<int>& driver_edges, const SmallTree& t,
                         const ForestPartition& f) {
  std::set<int> drv(driver_edges.begin(), driver_edges.end());
  long long crossed = 0;
  for (std::size_t i = 0; i < f.parts.size(); ++i) {
    const auto& edges = f.parts[i];
    int src = f.part_source[i];
    if (edges.empty()) continue;
    std::set<int> in_part(edges.begin(), edges.end());
    // leaves of the part: nodes of the part with no part edge below
    std::set<int> uppers;
    for (int e : edges) uppers.insert(t.parent[static_cast<std::size_t>(e)]);
    long long full_paths = 0;
    for (int e : edges) {
      if (uppers.count(e)) continue;  // not a leaf of the part
      bool inside = true;
      for (int v = e; v != src; v = t.parent[static_cast<std::size_t>(v)])
        if (!drv.count(v)) {
          inside = false;
          break;
        }
      if (inside) ++full_paths;
    }
    if (full_paths == 1) ++crossed;
  }
  return crossed;
}

// ---- solver internals -------------------------------------------------------

namespace {

// original tree rooted at the source, with deterministic child order
struct RootedTree {
  std::vector<int> par;                 // 1-based, par[source] = 0
  std::vector<std::vector<int>> kids;   // sorted ascending
  std::vector<int> par_edge;            // edge index (into inst.edges) above each node
};

RootedTree root_tree(const TreeInstance& inst) {
  RootedTree rt;
  rt.par.assign(static_cast<std::size_t>(inst.n_nodes) + 1, 0);
  rt.kids.assign(static_cast<std::size_t>(inst.n_nodes) + 1, {});
  rt.par_edge.assign(static_cast<std::size_t>(inst.n_nodes) + 1, -1);
  std::map<std::pair<int, int>, int> eid;
  for (int i = 0; i < static_cast<int>(inst.edges.size()); ++i) {
    auto key = std::minmax(inst.edges[static_cast<std::size_t>(i)].first,
                           inst.edges[static_cast<std::size_t>(i)].second);
    eid[{key.first, key.second}] = i;
  }
  auto adj = adjacency(inst);
  std::vector<char> vis(static_cast<std::size_t>(inst.n_nodes) + 1, 0);
  std::queue<int> q;
  q.push(inst.source);
  vis[static_cast<std::size_t>(inst.source)] = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : adj[static_cast<std::size_t>(u)])
      if (!vis[static_cast<std::size_t>(v)]) {
        vis[static_cast<std::size_t>(v)] = 1;
        rt.par[static_cast<std::size_t>(v)] = u;
        auto key = std::minmax(u, v);
        rt.par_edge[static_cast<std::size_t>(v)] = eid.at({key.first, key.second});
        rt.kids[static_cast<std::size_t>(u)].push_back(v);
        q.push(v);
      }
  }
  return rt;
}

struct RoundedTree {
  Rat scale;
  long long expansion = 1;
  bool trivial = false;
  long long discarded = 0, kept_count = 0;
  struct KDriver {
    int u = 0, v = 0;
    long long budget = 0;
    int orig = -1;
  };
  std::vector<KDriver> drivers;
};

RoundedTree round_tree(const TreeInstance& inst, const EpsParam& eps) {
  RoundedTree rt;
  long long m = static_cast<long long>(inst.drivers.size());
  Rat b_max = 0;
  for (const auto& d : inst.drivers) b_max = std::max(b_max, d.budget);
  if (m == 0 || b_max == 0) {
    rt.trivial = true;
    rt.scale = 1;
    return rt;
  }
  rt.expansion = 4 * eps.delta * eps.delta * m;
  rt.scale = Rat(rt.expansion) / b_max;
  for (int j = 0; j < static_cast<int>(inst.drivers.size()); ++j) {
    const auto& d = inst.drivers[static_cast<std::size_t>(j)];
    Rat scaled = d.budget * rt.scale;
    if (scaled < eps.inv_eps) {
      ++rt.discarded;
      continue;
    }
    ++rt.kept_count;
    rt.drivers.push_back({d.u, d.v, to_i64(rat_floor(scaled)), j});
  }
  if (rt.drivers.empty()) rt.trivial = true;
  return rt;
}

// the bounded expanded tree: unit edges, node 0 = far end of the source pad,
// edge v = (parent(v), v); node ids are preorder, so they ascend along every
// root-to-leaf path (and enumerate the bounded line left to right when the
// instance is a path)
struct BoundedTree {
  std::vector<int> parent;             // parent[0] = -1
  std::vector<std::vector<int>> kids;
  struct GDriver {
    std::vector<char> mask;  // by edge id
    long long budget = 0;
    int tag = -1;  // index into RoundedTree::drivers
  };
  std::vector<GDriver> drivers;
  std::vector<std::vector<int>> real_edges;  // per original edge index
  std::vector<int> node_of;                  // original node -> expanded node
  long long w_star = 0, x = 0, y = 0, base_w = 0, w_prime = 0;
};

BoundedTree build_bounded_tree(const TreeInstance& inst, const RootedTree& shape,
                               const RoundedTree& rt, long long w_star, long long x,
                               long long y, const Params& p) {
  if (x < 1 || x > w_star) throw InvalidParameter("x must lie in {1..W*}");
  if (y < 1 || y > static_cast<long long>(p.base_weights.size()))
    throw InvalidParameter("y must index a base weight");
  BoundedTree bt;
  bt.w_star = w_star;
  bt.x = x;
  bt.y = y;
  bt.base_w = p.base_weights[static_cast<std::size_t>(y - 1)];
  bt.w_prime = w_star * bt.base_w;
  bt.real_edges.assign(inst.edges.size(), {});
  bt.node_of.assign(static_cast<std::size_t>(inst.n_nodes) + 1, -1);

  bt.parent.push_back(-1);
  bt.kids.push_back({});
  auto add_node = [&](int par) {
    int id = static_cast<int>(bt.parent.size());
    bt.parent.push_back(par);
    bt.kids.push_back({});
    bt.kids[static_cast<std::size_t>(par)].push_back(id);
    return id;
  };
  auto add_chain = [&](int from, long long len, std::vector<int>* edges) {
    int cur = from;
    for (long long i = 0; i < len; ++i) {
      cur = add_node(cur);
      if (edges) edges->push_back(cur);
    }
    return cur;
  };

  // source pad: x unit edges, the far end is the new root
  int src = add_chain(0, x, nullptr);
  bt.node_of[static_cast<std::size_t>(inst.source)] = src;

  long long tail = w_star * (bt.base_w - 1) - x;
  auto walk = [&](auto&& self, int onode) -> void {
    int cur = bt.node_of[static_cast<std::size_t>(onode)];
    if (onode != inst.source && shape.kids[static_cast<std::size_t>(onode)].empty()) {
      // sink: dummy pad, then the tail
      add_chain(cur, w_star * p.gamma + tail, nullptr);
      return;
    }
    for (int oc : shape.kids[static_cast<std::size_t>(onode)]) {
      int oe = shape.par_edge[static_cast<std::size_t>(oc)];
      int end = add_chain(cur, rt.expansion, &bt.real_edges[static_cast<std::size_t>(oe)]);
      bt.node_of[static_cast<std::size_t>(oc)] = end;
      self(self, oc);
    }
  };
  walk(walk, inst.source);

  long long n_edges = static_cast<long long>(bt.parent.size()) - 1;
  for (int j = 0; j < static_cast<int>(rt.drivers.size()); ++j) {
    const auto& d = rt.drivers[static_cast<std::size_t>(j)];
    BoundedTree::GDriver g;
    g.mask.assign(static_cast<std::size_t>(n_edges) + 1, 0);
    g.budget = d.budget;
    g.tag = j;
    // the expanded u-v path: walk both endpoints up to their meeting point
    int a = bt.node_of[static_cast<std::size_t>(d.u)];
    int b = bt.node_of[static_cast<std::size_t>(d.v)];
    std::vector<char> on_a(bt.parent.size(), 0);
    for (int v = a; v != -1; v = bt.parent[static_cast<std::size_t>(v)]) on_a[static_cast<std::size_t>(v)] = 1;
    int meet = b;
    while (!on_a[static_cast<std::size_t>(meet)]) meet = bt.parent[static_cast<std::size_t>(meet)];
    for (int v = a; v != meet; v = bt.parent[static_cast<std::size_t>(v)]) g.mask[static_cast<std::size_t>(v)] = 1;
    for (int v = b; v != meet; v = bt.parent[static_cast<std::size_t>(v)]) g.mask[static_cast<std::size_t>(v)] = 1;
    bt.drivers.push_back(std::move(g));
  }
  return bt;
}

struct Comp {
  int top = 0;
  std::vector<int> bottoms;  // ascending
  bool operator<(const Comp& o) const {
    if (top != o.top) return top < o.top;
    return bottoms < o.bottoms;
  }
};

struct TreeRecon {
  long long root_value = 0;
  std::vector<std::pair<long long, long long>> weights;  // (edge, weight)
  std::vector<DpRecord> records;
};

// gamma-ary dissection DP over components of the bounded tree, with the table
// semantics "every source-to-leaf path of the component carries exactly the
// level weight"
class TreeDp {
 public:
  TreeDp(const BoundedTree& bt, long long gamma, long long delta)
      : bt_(bt), gamma_(gamma), delta_(delta) {
    long long w = bt_.base_w;
    while (w < bt_.w_prime) {
      w *= gamma_;
      ++levels_;
    }
    if (w != bt_.w_prime) throw InvalidParameter("W' must be base * gamma^k");
    n_edges_ = static_cast<long long>(bt_.parent.size()) - 1;
    build_segments();
  }

  long long level_weight(int q) const {
    long long w = bt_.w_prime;
    for (int i = 0; i < q; ++i) w /= gamma_;
    return w;
  }
  int levels() const { return levels_; }

  DpVal value(const Comp& c, int q) {
    auto key = std::make_pair(c, q);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    DpVal v = step_value(c, q);
    memo_.emplace(key, v);
    return v;
  }

  DpVal root() { return value({0, {}}, 0); }

  TreeRecon reconstruct() {
    DpVal r = root();
    if (!r.feasible) throw InternalError("reconstruct called on an infeasible root");
    TreeRecon out;
    out.root_value = r.value;
    long long accounted = 0;
    rec_path({0, {}}, 0, out, accounted);
    if (accounted != r.value)
      throw InternalError("reconstruction does not reproduce the root value");
    std::sort(out.weights.begin(), out.weights.end());
    // every root-to-leaf path must carry exactly W'
    std::vector<long long> wsum(bt_.parent.size(), 0);
    std::vector<long long> wdense(bt_.parent.size(), 0);
    for (const auto& [e, w] : out.weights) wdense[static_cast<std::size_t>(e)] = w;
    for (std::size_t v = 1; v < bt_.parent.size(); ++v)
      wsum[v] = wsum[static_cast<std::size_t>(bt_.parent[v])] + wdense[v];
    for (std::size_t v = 1; v < bt_.parent.size(); ++v)
      if (bt_.kids[v].empty() && wsum[v] != bt_.w_prime)
        throw InternalError("a source-sink path does not carry W'");
    for (auto& rec : out.records) {
      const auto& d = bt_.drivers[static_cast<std::size_t>(rec.driver)];
      long long wj = 0;
      for (const auto& [e, w] : out.weights)
        if (d.mask[static_cast<std::size_t>(e)]) wj += w;
      rec.weight_full = wj;
    }
    return out;
  }

  const std::map<std::pair<Comp, int>, DpVal>& table() const { return memo_; }

 private:
  struct Portion {
    std::vector<int> edges;  // top-down
    int seg = -1;
    bool full = false;
    int parent = -1;
    std::vector<int> kids;
    long long cap = 0;
    long long mincap_below = 0;
  };

  void build_segments() {
    seg_of_edge_.assign(bt_.parent.size(), -1);
    auto same_drivers = [&](int e1, int e2) {
      for (const auto& d : bt_.drivers)
        if (d.mask[static_cast<std::size_t>(e1)] != d.mask[static_cast<std::size_t>(e2)]) return false;
      return true;
    };
    // preorder: a chain edge continues its parent's segment when the driver
    // set is unchanged
    auto walk = [&](auto&& self, int u) -> void {
      for (int v : bt_.kids[static_cast<std::size_t>(u)]) {
        if (u != 0 && bt_.kids[static_cast<std::size_t>(u)].size() == 1 &&
            same_drivers(v, u)) {
          seg_of_edge_[static_cast<std::size_t>(v)] = seg_of_edge_[static_cast<std::size_t>(u)];
        } else {
          seg_of_edge_[static_cast<std::size_t>(v)] = n_segs_++;
        }
        seg_size_.resize(static_cast<std::size_t>(n_segs_), 0);
        ++seg_size_[static_cast<std::size_t>(seg_of_edge_[static_cast<std::size_t>(v)])];
        self(self, v);
      }
    };
    walk(walk, 0);
  }

  // edges of a component in preorder, plus its leaves (bottoms and tree leaves)
  void comp_edges(const Comp& c, std::vector<int>* edges, std::vector<int>* leaves) const {
    std::vector<char> is_bottom(bt_.parent.size(), 0);
    for (int b : c.bottoms) is_bottom[static_cast<std::size_t>(b)] = 1;
    auto walk = [&](auto&& self, int u) -> void {
      if (is_bottom[static_cast<std::size_t>(u)] || bt_.kids[static_cast<std::size_t>(u)].empty()) {
        if (leaves) leaves->push_back(u);
        return;
      }
      for (int v : bt_.kids[static_cast<std::size_t>(u)]) {
        if (edges) edges->push_back(v);
        self(self, v);
      }
    };
    walk(walk, c.top);
  }

  std::vector<int> contained_drivers(const std::vector<char>& in_comp) const {
    std::vector<int> out;
    for (int j = 0; j < static_cast<int>(bt_.drivers.size()); ++j) {
      const auto& d = bt_.drivers[static_cast<std::size_t>(j)];
      bool inside = true, any = false;
      for (std::size_t e = 1; e < d.mask.size(); ++e)
        if (d.mask[e]) {
          any = true;
          if (!in_comp[e]) {
            inside = false;
            break;
          }
        }
      if (any && inside) out.push_back(j);
    }
    return out;
  }

  std::vector<Portion> portions_of(const Comp& c) const {
    std::vector<char> is_bottom(bt_.parent.size(), 0);
    for (int b : c.bottoms) is_bottom[static_cast<std::size_t>(b)] = 1;
    std::vector<Portion> ports;
    // the walk grows the open portion across chain nodes; restart "open" when
    // branching or changing segments
    auto walk2 = [&](auto&& self, int u, int open) -> void {
      if (is_bottom[static_cast<std::size_t>(u)]) return;
      const auto& ks = bt_.kids[static_cast<std::size_t>(u)];
      for (int v : ks) {
        int pid;
        bool cont = open != -1 && ks.size() == 1 && u != c.top &&
                    seg_of_edge_[static_cast<std::size_t>(v)] ==
                        ports[static_cast<std::size_t>(open)].seg;
        if (cont) {
          pid = open;
        } else {
          Portion p;
          p.seg = seg_of_edge_[static_cast<std::size_t>(v)];
          p.parent = open;
          pid = static_cast<int>(ports.size());
          ports.push_back(p);
          if (open != -1) ports[static_cast<std::size_t>(open)].kids.push_back(pid);
        }
        ports[static_cast<std::size_t>(pid)].edges.push_back(v);
        self(self, v, pid);
      }
    };
    walk2(walk2, c.top, -1);
    for (auto& p : ports)
      p.full = static_cast<long long>(p.edges.size()) ==
               seg_size_[static_cast<std::size_t>(p.seg)];
    return ports;
  }

  static void fill_caps(std::vector<Portion>& ports, long long c) {
    for (auto& p : ports) p.cap = std::min<long long>(static_cast<long long>(p.edges.size()), c);
    // mincap_below: over every leaf path strictly below, the minimum total cap
    for (int i = static_cast<int>(ports.size()) - 1; i >= 0; --i) {
      auto& p = ports[static_cast<std::size_t>(i)];
      if (p.kids.empty()) {
        p.mincap_below = 0;
      } else {
        long long mn = -1;
        for (int k : p.kids) {
          long long v = ports[static_cast<std::size_t>(k)].cap +
                        ports[static_cast<std::size_t>(k)].mincap_below;
          if (mn < 0 || v < mn) mn = v;
        }
        p.mincap_below = mn;
      }
    }
  }

  DpVal step_value(const Comp& c, int q) {
    std::vector<int> edges, leaves;
    comp_edges(c, &edges, &leaves);
    std::vector<char> in_comp(bt_.parent.size(), 0);
    for (int e : edges) in_comp[static_cast<std::size_t>(e)] = 1;
    auto contained = contained_drivers(in_comp);
    long long wq = level_weight(q);
    if (contained.empty()) return {min_leaf_depth(c, leaves) >= wq, 0};
    if (q == levels_) return base_best(c, bt_.base_w, nullptr).val;
    DpVal best;
    std::vector<int> splits;
    enumerate_splits(c, q, contained, leaves, false, best, splits);
    return best;
  }

  long long min_leaf_depth(const Comp& c, const std::vector<int>& leaves) const {
    long long mn = -1;
    for (int l : leaves) {
      long long d = 0;
      for (int v = l; v != c.top; v = bt_.parent[static_cast<std::size_t>(v)]) ++d;
      if (mn < 0 || d < mn) mn = d;
    }
    return mn < 0 ? 0 : mn;
  }

  struct BaseOut {
    DpVal val;
    std::vector<long long> counts;
  };

  BaseOut base_best(const Comp& c, long long cw, std::vector<Portion>* ports_out) {
    auto ports = portions_of(c);
    fill_caps(ports, cw);
    std::vector<char> in_comp(bt_.parent.size(), 0);
    {
      std::vector<int> edges;
      comp_edges(c, &edges, nullptr);
      for (int e : edges) in_comp[static_cast<std::size_t>(e)] = 1;
    }
    auto contained = contained_drivers(in_comp);

    BaseOut out;
    std::vector<long long> counts(ports.size(), 0), rem_after(ports.size(), 0);
    bool found = false;
    bool done = false;
    long long cap = 0;
    for (int j : contained) cap += bt_.drivers[static_cast<std::size_t>(j)].budget;
    long long best = 0;
    std::vector<long long> best_counts;
    auto score = [&]() {
      long long value = 0;
      for (int j : contained) {
        const auto& d = bt_.drivers[static_cast<std::size_t>(j)];
        long long wj = 0;
        for (std::size_t i = 0; i < ports.size(); ++i)
          if (ports[i].full && d.mask[static_cast<std::size_t>(ports[i].edges.front())])
            wj += counts[i];
        if (wj <= d.budget) value += wj;
      }
      if (!found || value > best) {
        found = true;
        best = value;
        best_counts = counts;
        if (best >= cap) done = true;  // budget sum: safe to stop, first maximizer kept
      }
    };
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (done) return;
      if (i == ports.size()) {
        score();
        return;
      }
      const auto& p = ports[i];
      long long r = (p.parent == -1) ? cw : rem_after[static_cast<std::size_t>(p.parent)];
      long long lo = std::max(0LL, r - p.mincap_below);
      long long hi = std::min(p.cap, r);
      if (p.kids.empty()) lo = std::max(lo, r);  // leaf portions must finish the path
      for (long long k = lo; k <= hi && !done; ++k) {
        counts[i] = k;
        rem_after[i] = r - k;
        self(self, i + 1);
      }
      counts[i] = 0;
    };
    if (ports.empty()) {
      // no edges: feasible only for zero weight
      out.val = {cw == 0, 0};
      return out;
    }
    rec(rec, 0);
    out.val = {found, best};
    out.counts = best_counts;
    if (ports_out) *ports_out = std::move(ports);
    return out;
  }

  std::vector<int> split_candidates(const Comp& c, int q,
                                    const std::vector<int>& leaves) const {
    long long K = level_weight(q);
    auto ports = portions_of(c);
    std::vector<char> is_leaf(bt_.parent.size(), 0), is_bottom(bt_.parent.size(), 0);
    for (int l : leaves) is_leaf[static_cast<std::size_t>(l)] = 1;
    for (int b : c.bottoms) is_bottom[static_cast<std::size_t>(b)] = 1;
    std::set<int> cand;
    for (const auto& p : ports) {
      long long k = static_cast<long long>(p.edges.size());
      long long t = std::min(K, k);
      auto node_at = [&](long long i) {
        // node reached after i edges of the portion
        return i == 0 ? bt_.parent[static_cast<std::size_t>(p.edges.front())]
                      : p.edges[static_cast<std::size_t>(i - 1)];
      };
      for (long long i = 0; i <= t; ++i) {
        cand.insert(node_at(i));
        cand.insert(node_at(k - i));
      }
    }
    std::vector<int> out;
    for (int v : cand)
      if (v != c.top && !is_leaf[static_cast<std::size_t>(v)] &&
          !is_bottom[static_cast<std::size_t>(v)])
        out.push_back(v);
    return out;  // ascending (set order)
  }

  std::vector<Comp> children_of(const Comp& c, const std::vector<int>& splits) const {
    std::vector<char> is_src(bt_.parent.size(), 0);
    is_src[static_cast<std::size_t>(c.top)] = 1;
    for (int s : splits) is_src[static_cast<std::size_t>(s)] = 1;
    auto govern = [&](int v) {
      while (!is_src[static_cast<std::size_t>(v)]) v = bt_.parent[static_cast<std::size_t>(v)];
      return v;
    };
    std::map<int, std::vector<int>> bot;
    bot[c.top];
    for (int s : splits) bot[s];
    for (int s : splits) bot[govern(bt_.parent[static_cast<std::size_t>(s)])].push_back(s);
    for (int b : c.bottoms) bot[govern(bt_.parent[static_cast<std::size_t>(b)])].push_back(b);
    std::vector<Comp> out;
    for (auto& [src, bs] : bot) {
      std::sort(bs.begin(), bs.end());
      out.push_back({src, bs});
    }
    return out;  // ascending by source
  }

  long long credits_for(const std::vector<int>& contained,
                        const std::vector<Comp>& children, long long wc,
                        std::vector<DpRecord>* out) const {
    long long total = 0;
    // per child: the edge set and the leaves
    std::vector<std::vector<int>> cedges(children.size()), cleaves(children.size());
    std::vector<std::vector<char>> cmask(children.size());
    for (std::size_t i = 0; i < children.size(); ++i) {
      comp_edges(children[i], &cedges[i], &cleaves[i]);
      cmask[i].assign(bt_.parent.size(), 0);
      for (int e : cedges[i]) cmask[i][static_cast<std::size_t>(e)] = 1;
    }
    for (int j : contained) {
      const auto& d = bt_.drivers[static_cast<std::size_t>(j)];
      bool inside_one = false;
      long long n = 0;
      for (std::size_t i = 0; i < children.size(); ++i) {
        bool covers = true;
        for (std::size_t e = 1; e < d.mask.size(); ++e)
          if (d.mask[e] && !cmask[i][e]) {
            covers = false;
            break;
          }
        if (covers) inside_one = true;
        // crossed: exactly one full source-to-leaf path of the child inside
        long long full_paths = 0;
        for (int l : cleaves[i]) {
          bool inside = true;
          for (int v = l; v != children[i].top; v = bt_.parent[static_cast<std::size_t>(v)])
            if (!d.mask[static_cast<std::size_t>(v)]) {
              inside = false;
              break;
            }
          if (inside) ++full_paths;
        }
        if (full_paths == 1) ++n;
      }
      if (inside_one) continue;
      if (n < delta_) continue;
      if (wc * n > d.budget) continue;
      total += wc * n;
      if (out) out->push_back({DpRecord::GoodDriver, j, d.tag, n, wc * n, 0});
    }
    return total;
  }

  void enumerate_splits(const Comp& c, int q, const std::vector<int>& contained,
                        const std::vector<int>& leaves, bool want_argmax,
                        DpVal& best, std::vector<int>& best_splits) {
    best = DpVal{};
    best_splits.clear();
    auto cand = split_candidates(c, q, leaves);
    long long wc = level_weight(q + 1);
    // splits per source-sink path: exactly gamma-1 on every path
    std::vector<std::vector<int>> on_path(cand.size());
    for (std::size_t i = 0; i < cand.size(); ++i) {
      std::vector<char> below(bt_.parent.size(), 0);
      below[static_cast<std::size_t>(cand[i])] = 1;
      for (std::size_t l = 0; l < leaves.size(); ++l) {
        for (int v = leaves[static_cast<std::size_t>(l)]; v != c.top;
             v = bt_.parent[static_cast<std::size_t>(v)])
          if (v == cand[i]) {
            on_path[i].push_back(static_cast<int>(l));
            break;
          }
      }
    }
    std::vector<long long> cnt(leaves.size(), 0);
    std::vector<int> cur;
    auto complete = [&]() {
      for (long long v : cnt)
        if (v != gamma_ - 1) return false;
      return true;
    };
    // feasibility pruning, mirroring the line DP's minimum-part-length rule:
    // every top-to-leaf path of a feasible child carries exactly wc with 0/1
    // weights, so consecutive splits (and split-to-leaf stretches) shorter
    // than wc can never appear in a feasible partition
    std::vector<char> chosen(bt_.parent.size(), 0);
    std::vector<long long> depth(bt_.parent.size(), 0);
    for (std::size_t v = 1; v < bt_.parent.size(); ++v)
      depth[v] = depth[static_cast<std::size_t>(bt_.parent[v])] + 1;
    // candidates with index >= idx on each source-sink path, for the
    // completion prune
    std::vector<std::vector<long long>> avail(leaves.size(),
                                              std::vector<long long>(cand.size() + 1, 0));
    for (std::size_t i = cand.size(); i-- > 0;) {
      for (std::size_t l = 0; l < leaves.size(); ++l) avail[l][i] = avail[l][i + 1];
      for (int l : on_path[i]) ++avail[static_cast<std::size_t>(l)][i];
    }
    auto gap_above_ok = [&](int v) {
      long long up = 0;
      for (int a = v;;) {
        a = bt_.parent[static_cast<std::size_t>(a)];
        ++up;
        if (up >= wc) return true;
        if (a == c.top || chosen[static_cast<std::size_t>(a)]) return false;
      }
    };
    // every driver pays at most its budget and is credited on exactly one
    // level, so no split set can beat the budget sum; stopping at the cap
    // keeps the first maximizer
    long long cap = 0;
    for (int j : contained) cap += bt_.drivers[static_cast<std::size_t>(j)].budget;
    bool done = false;
    auto evaluate = [&]() {
      auto children = children_of(c, cur);
      long long acc = 0;
      for (const auto& ch : children) {
        DpVal v = value(ch, q + 1);
        if (!v.feasible) return;
        acc += v.value;
      }
      acc += credits_for(contained, children, wc, nullptr);
      if (!best.feasible || acc > best.value) {
        best = {true, acc};
        if (want_argmax) best_splits = cur;
        if (best.value >= cap) done = true;
      }
    };
    auto rec = [&](auto&& self, std::size_t idx) -> void {
      if (done) return;
      if (complete()) {
        evaluate();
        return;
      }
      for (std::size_t l = 0; l < leaves.size(); ++l)
        if (cnt[l] + avail[l][idx] < gamma_ - 1) return;
      for (std::size_t i = idx; i < cand.size() && !done; ++i) {
        bool ok = !on_path[i].empty();
        for (int l : on_path[i])
          if (cnt[static_cast<std::size_t>(l)] + 1 > gamma_ - 1) ok = false;
        if (!ok) continue;
        if (!gap_above_ok(cand[i])) continue;
        // every later split on a path through cand[i] sits below it, so the
        // leftover stretch must fit the remaining splits with wc-long parts
        for (int l : on_path[i]) {
          long long need = gamma_ - 1 - (cnt[static_cast<std::size_t>(l)] + 1);
          if (depth[static_cast<std::size_t>(leaves[static_cast<std::size_t>(l)])] -
                  depth[static_cast<std::size_t>(cand[i])] <
              (need + 1) * wc)
            ok = false;
        }
        if (!ok) continue;
        for (int l : on_path[i]) ++cnt[static_cast<std::size_t>(l)];
        cur.push_back(cand[i]);
        chosen[static_cast<std::size_t>(cand[i])] = 1;
        self(self, i + 1);
        chosen[static_cast<std::size_t>(cand[i])] = 0;
        cur.pop_back();
        for (int l : on_path[i]) --cnt[static_cast<std::size_t>(l)];
      }
    };
    rec(rec, 0);
  }

  void place_counts(const std::vector<Portion>& ports,
                    const std::vector<long long>& counts, TreeRecon& out) const {
    for (std::size_t i = 0; i < ports.size(); ++i)
      for (long long k = 0; k < counts[i]; ++k)
        out.weights.push_back({ports[i].edges[static_cast<std::size_t>(k)], 1});
  }

  void place_driver_free(const Comp& c, long long cw, TreeRecon& out) const {
    auto ports = portions_of(c);
    fill_caps(ports, cw);
    if (ports.empty()) {
      if (cw != 0) throw InternalError("cannot place weight on an empty component");
      return;
    }
    std::vector<long long> counts(ports.size(), 0), rem_after(ports.size(), 0);
    for (std::size_t i = 0; i < ports.size(); ++i) {
      const auto& p = ports[i];
      long long r = (p.parent == -1) ? cw : rem_after[static_cast<std::size_t>(p.parent)];
      long long k = std::min(std::max(0LL, r - p.mincap_below), p.cap);
      if (p.kids.empty()) k = r;
      if (k < 0 || k > p.cap) throw InternalError("cannot place the level weight on a feasible component");
      counts[i] = k;
      rem_after[i] = r - k;
    }
    place_counts(ports, counts, out);
  }

  void rec_path(const Comp& c, int q, TreeRecon& out, long long& accounted) {
    std::vector<int> edges, leaves;
    comp_edges(c, &edges, &leaves);
    std::vector<char> in_comp(bt_.parent.size(), 0);
    for (int e : edges) in_comp[static_cast<std::size_t>(e)] = 1;
    auto contained = contained_drivers(in_comp);
    if (contained.empty()) {
      place_driver_free(c, level_weight(q), out);
      return;
    }
    if (q == levels_) {
      std::vector<Portion> ports;
      BaseOut bb = base_best(c, bt_.base_w, &ports);
      if (!bb.val.feasible) throw InternalError("infeasible base entry on reconstruction");
      place_counts(ports, bb.counts, out);
      accounted += bb.val.value;
      for (int j : contained) {
        const auto& d = bt_.drivers[static_cast<std::size_t>(j)];
        long long wj = 0;
        for (std::size_t i = 0; i < ports.size(); ++i)
          if (ports[i].full && d.mask[static_cast<std::size_t>(ports[i].edges.front())])
            wj += bb.counts[i];
        if (wj <= d.budget)
          out.records.push_back({DpRecord::BaseSatisfied, j, d.tag, 0, wj, wj});
      }
      return;
    }
    DpVal best;
    std::vector<int> splits;
    enumerate_splits(c, q, contained, leaves, true, best, splits);
    if (!best.feasible) throw InternalError("dangling argmax: no feasible split set on reconstruction");
    DpVal stored = value(c, q);
    if (!stored.feasible || stored.value != best.value)
      throw InternalError("argmax recomputation disagrees with the stored table value");
    auto children = children_of(c, splits);
    accounted += credits_for(contained, children, level_weight(q + 1), &out.records);
    for (const auto& ch : children) rec_path(ch, q + 1, out, accounted);
  }

  const BoundedTree& bt_;
  long long gamma_, delta_;
  int levels_ = 0;
  long long n_edges_ = 0;
  int n_segs_ = 0;
  std::vector<int> seg_of_edge_;
  std::vector<long long> seg_size_;
  std::map<std::pair<Comp, int>, DpVal> memo_;
};

nlohmann::json tree_trace_json(const RoundedTree& rt) {
  nlohmann::json t;
  t["scale"] = rat_to_json(rt.scale);
  t["expansion"] = rt.expansion;
  t["discarded"] = rt.discarded;
  t["kept"] = rt.kept_count;
  nlohmann::json budgets = nlohmann::json::array();
  for (const auto& d : rt.drivers) budgets.push_back(d.budget);
  t["rounded_budgets"] = budgets;
  t["trivial"] = rt.trivial;
  return t;
}

nlohmann::json tree_records_json(const std::vector<DpRecord>& records) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::json rj;
    rj["kind"] = (r.kind == DpRecord::BaseSatisfied) ? "base" : "good";
    rj["driver"] = r.driver;
    rj["tag"] = r.tag;
    rj["n_parts"] = r.n_parts;
    rj["credit"] = r.credit;
    rj["weight_full"] = r.weight_full;
    out.push_back(rj);
  }
  return out;
}

SolveReport tree_zero_report(const TreeInstance& inst) {
  SolveReport r;
  r.weights.weights.assign(inst.edges.size(), Rat(0));
  r.profit = 0;
  r.satisfied = tree_satisfied_set(inst, r.weights);
  r.diagnostics = nlohmann::json::object();
  r.trace = nlohmann::json::object();
  return r;
}

long long max_real_path(const TreeInstance& inst, const RootedTree& shape,
                        long long expansion) {
  long long best = 0;
  auto walk = [&](auto&& self, int u, long long depth) -> void {
    if (u != inst.source && shape.kids[static_cast<std::size_t>(u)].empty()) {
      best = std::max(best, depth);
      return;
    }
    for (int v : shape.kids[static_cast<std::size_t>(u)]) self(self, v, depth + expansion);
  };
  walk(walk, inst.source, 0);
  return best;
}

}  // namespace

SolveReport run_tollbooth(const TreeInstance& inst, const TollboothOptions& opt) {
  if (inst.n_nodes >= 2 && leaf_count(inst) > opt.max_leaves)
    throw UnsupportedInstance("leaf count exceeds the configured maximum of " +
                              std::to_string(opt.max_leaves));
  auto violations = validate(inst, opt.max_leaves);
  if (!violations.empty()) throw InvalidInput("run_tollbooth: " + violations.front());
  const Params& p = opt.params;

  SolveReport best = tree_zero_report(inst);
  best.diagnostics["algorithm"] = "tollbooth";
  best.diagnostics["guarantee_void"] = p.guarantee_void;

  if (inst.drivers.empty()) return best;
  RoundedTree rt = round_tree(inst, p.eps);
  best.trace = tree_trace_json(rt);
  if (rt.trivial) return best;

  RootedTree shape = root_tree(inst);
  SplitRng rng(opt.seed);
  nlohmann::json guesses = nlohmann::json::array();
  nlohmann::json chosen;
  // a minimum-total-weight optimum puts weight only inside satisfied driver
  // paths, so its total is at most the budget sum (and at most the longest
  // source-sink path, the 0/1 capacity of any single driver)
  long long budget_sum = 0;
  for (const auto& d : rt.drivers) budget_sum += d.budget;
  long long max_w = padded_power(
      p.gamma, std::min(max_real_path(inst, shape, rt.expansion), budget_sum));
  Rat lift_scale = Rat(p.delta, p.delta + 4) / rt.scale;

  for (long long w_star = 1;; w_star *= p.gamma) {
    nlohmann::json gj;
    gj["w_star"] = w_star;
    nlohmann::json draws = nlohmann::json::array();

    std::vector<std::pair<long long, long long>> xy;  // (x, y)
    long long y_count = static_cast<long long>(p.base_weights.size());
    if (opt.mode == SolveMode::Derandomized) {
      for (long long y = 1; y <= y_count; ++y)
        for (long long x = 1; x <= w_star; ++x) xy.push_back({x, y});
    } else {
      long long x = rng.uniform(1, w_star);
      long long y = rng.uniform(1, y_count);
      xy.push_back({x, y});
    }

    for (auto [x, y] : xy) {
      BoundedTree bt = build_bounded_tree(inst, shape, rt, w_star, x, y, p);
      TreeDp dp(bt, p.gamma, p.delta);
      DpVal root = dp.root();
      nlohmann::json dj;
      dj["x"] = x;
      dj["y"] = y;
      dj["feasible"] = root.feasible;
      if (root.feasible) {
        TreeRecon res = dp.reconstruct();
        std::vector<long long> dense(bt.parent.size(), 0);
        for (const auto& [e, w] : res.weights) dense[static_cast<std::size_t>(e)] = w;
        WeightAssignment lifted;
        for (std::size_t oe = 0; oe < inst.edges.size(); ++oe) {
          long long s = 0;
          for (int e : bt.real_edges[oe]) s += dense[static_cast<std::size_t>(e)];
          lifted.weights.push_back(Rat(s) * lift_scale);
        }
        Rat pr = tree_profit(inst, lifted);
        dj["apx_d"] = res.root_value;
        dj["profit"] = rat_to_json(pr);
        dj["table_entries"] = dp.table().size();
        if (opt.audit) dj["records"] = tree_records_json(res.records);
        if (pr > best.profit) {
          best.profit = pr;
          best.weights = lifted;
          best.satisfied = tree_satisfied_set(inst, lifted);
          chosen = {{"w_star", w_star}, {"x", x}, {"y", y}, {"apx_d", res.root_value}};
        }
      }
      draws.push_back(dj);
    }
    gj["draws"] = draws;
    guesses.push_back(gj);
    if (w_star >= max_w) break;
  }
  best.diagnostics["guesses"] = guesses;
  best.diagnostics["chosen"] = chosen;
  best.diagnostics["mode"] =
      (opt.mode == SolveMode::Derandomized) ? "derandomized" : "randomized";
  return best;
}

TollboothDebugRun tollbooth_debug_run(const TreeInstance& inst,
                                      const TollboothOptions& opt,
                                      long long w_star, long long x, long long y) {
  auto violations = validate(inst, opt.max_leaves);
  if (!violations.empty()) throw InvalidInput("tollbooth_debug_run: " + violations.front());
  const Params& p = opt.params;
  RoundedTree rt = round_tree(inst, p.eps);
  if (rt.trivial) throw InvalidParameter("the debug run needs a non-trivial rounded instance");
  RootedTree shape = root_tree(inst);
  BoundedTree bt = build_bounded_tree(inst, shape, rt, w_star, x, y, p);
  TreeDp dp(bt, p.gamma, p.delta);
  DpVal root = dp.root();

  TollboothDebugRun out;
  out.w_star = w_star;
  out.x = x;
  out.y = y;
  out.base_w = bt.base_w;
  out.w_prime = bt.w_prime;
  out.root_feasible = root.feasible;
  out.root_value = root.feasible ? root.value : 0;
  long long n_edges = static_cast<long long>(bt.parent.size()) - 1;
  if (leaf_count(inst) == 2) {
    // on a path the preorder node ids enumerate the bounded line, so a
    // component (top, bottom) is the subpath (top, bottom]
    for (const auto& [key, val] : dp.table()) {
      const auto& [comp, q] = key;
      TollboothTableEntry e;
      e.a = comp.top + 1;
      e.b = comp.bottoms.empty() ? n_edges : comp.bottoms.front();
      e.level = q;
      e.feasible = val.feasible;
      e.value = val.value;
      out.path_entries.push_back(e);
    }
    std::sort(out.path_entries.begin(), out.path_entries.end(),
              [](const TollboothTableEntry& l, const TollboothTableEntry& r) {
                if (l.a != r.a) return l.a < r.a;
                if (l.b != r.b) return l.b < r.b;
                return l.level < r.level;
              });
    if (root.feasible) out.path_weights = dp.reconstruct().weights;
  }
  return out;
}

}  // namespace pathprice
