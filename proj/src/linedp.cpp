#include "pathprice/linedp.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace pathprice {

namespace {

struct Portion {
  int seg = 0;
  long long lo = 0, hi = 0;  // edge range, clipped to the path
  bool full = false;         // portion covers the whole segment
};

std::vector<Portion> portions_of(const LineProblem& prob, long long a, long long b,
                                 int sa, int sb) {
  std::vector<Portion> out;
  for (int s = sa; s <= sb; ++s) {
    const auto& seg = prob.segments[static_cast<std::size_t>(s)];
    Portion p;
    p.seg = s;
    p.lo = std::max(seg.first, a);
    p.hi = std::min(seg.first + seg.len - 1, b);
    p.full = (p.lo == seg.first && p.hi == seg.first + seg.len - 1);
    out.push_back(p);
  }
  return out;
}

// Best composition of total c over the portions, lexicographically least
// among maximizers.  Shared by LineDp::base_best and the public base_profit.
struct BaseSearch {
  const LineProblem& prob;
  const std::vector<Portion>& portions;
  long long a, b, c;
  const std::vector<char>* keep;

  std::vector<int> drv;                       // contained driver indices
  std::vector<std::vector<int>> drv_portions; // per contained driver: portion ids
  std::vector<long long> caps, suffix;
  std::vector<long long> cur;
  bool found = false;
  long long best = 0;
  std::vector<long long> best_counts;

  void run() {
    for (int j = 0; j < static_cast<int>(prob.drivers.size()); ++j) {
      const auto& d = prob.drivers[j];
      if (d.left < a || d.right > b) continue;
      if (keep && !(*keep)[static_cast<std::size_t>(j)]) continue;
      drv.push_back(j);
      std::vector<int> inside;
      for (int i = 0; i < static_cast<int>(portions.size()); ++i)
        if (portions[i].full && portions[i].lo >= d.left && portions[i].hi <= d.right)
          inside.push_back(i);
      drv_portions.push_back(std::move(inside));
    }
    for (const auto& p : portions) {
      long long len = p.hi - p.lo + 1;
      caps.push_back(prob.mode == DpWeights::ZeroOne ? std::min(len, c) : c);
    }
    suffix.assign(caps.size() + 1, 0);
    for (int i = static_cast<int>(caps.size()) - 1; i >= 0; --i)
      suffix[static_cast<std::size_t>(i)] = suffix[static_cast<std::size_t>(i) + 1] + caps[static_cast<std::size_t>(i)];
    cur.assign(caps.size(), 0);
    rec(0, c);
  }

  void rec(int i, long long rem) {
    if (i == static_cast<int>(caps.size())) {
      if (rem != 0) return;
      score();
      return;
    }
    long long lo = std::max(0LL, rem - suffix[static_cast<std::size_t>(i) + 1]);
    long long hi = std::min(rem, caps[static_cast<std::size_t>(i)]);
    for (long long v = lo; v <= hi; ++v) {
      cur[static_cast<std::size_t>(i)] = v;
      rec(i + 1, rem - v);
    }
    cur[static_cast<std::size_t>(i)] = 0;
  }

  void score() {
    long long value = 0;
    for (std::size_t k = 0; k < drv.size(); ++k) {
      const auto& d = prob.drivers[static_cast<std::size_t>(drv[k])];
      long long wj = 0;
      for (int i : drv_portions[k]) wj += cur[static_cast<std::size_t>(i)];
      if (prob.mode == DpWeights::ZeroOne) {
        if (wj <= d.budget) value += wj;
      } else {
        // relaxed lower bound: lower/(1+4eps) <= wj with 1+4eps = (delta+2)/delta
        // is checked by the caller via records; here the base entry uses the
        // same relaxed test as D2, with delta supplied through the bounds.
        if (d.lower * base_delta <= wj * (base_delta + 2) && wj <= d.upper) value += 1;
      }
    }
    if (!found || value > best) {
      found = true;
      best = value;
      best_counts = cur;
    }
  }

  long long base_delta = 1;
};

}  // namespace

DpVal base_profit(const LineProblem& prob, long long a, long long b, long long c) {
  LineDp dp(prob, 2, 1, c, c, true);
  return dp.base_value(a, b, c);
}

LineDp::LineDp(LineProblem prob, long long gamma, long long delta, long long base_w,
               long long w_prime, bool compressed)
    : prob_(std::move(prob)),
      gamma_(gamma),
      delta_(delta),
      base_w_(base_w),
      w_prime_(w_prime),
      compressed_(compressed) {
  if (gamma_ < 2 || delta_ < 1 || base_w_ < 1 || w_prime_ < base_w_)
    throw InvalidParameter("bad dynamic program parameters");
  long long w = base_w_;
  int q = 0;
  while (w < w_prime_) {
    w *= gamma_;
    ++q;
  }
  if (w != w_prime_)
    throw InvalidParameter("total weight is not base * gamma^k");
  levels_ = q;
  long long covered = 0;
  for (const auto& s : prob_.segments) covered += s.len;
  if (covered != prob_.n_edges || prob_.segments.empty() || prob_.segments.front().first != 1)
    throw InvalidInput("segments do not partition the edge set");
}

long long LineDp::level_weight(int q) const {
  long long w = w_prime_;
  for (int i = 0; i < q; ++i) w /= gamma_;
  return w;
}

long long LineDp::clamp_at(int q) const {
  if (prob_.mode == DpWeights::ZeroOne) return level_weight(q);
  // Integer mode: a level consumes at most gamma-1 single-edge parts per
  // segment portion before the straddling child takes over.
  return (gamma_ - 1) * (levels_ - q) + 1;
}

int LineDp::seg_of(long long edge) const {
  int lo = 0, hi = static_cast<int>(prob_.segments.size()) - 1;
  while (lo < hi) {
    int mid = (lo + hi + 1) / 2;
    if (prob_.segments[static_cast<std::size_t>(mid)].first <= edge)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

LineDp::Key LineDp::make_key(long long a, long long b, int q) const {
  Key k;
  k.q = q;
  if (!compressed_) {
    k.sa = static_cast<int>(a);
    k.sb = static_cast<int>(b);
    k.fa = k.fb = false;
    k.ca = k.cb = 0;
    return k;
  }
  int sa = seg_of(a), sb = seg_of(b);
  const auto& ga = prob_.segments[static_cast<std::size_t>(sa)];
  const auto& gb = prob_.segments[static_cast<std::size_t>(sb)];
  k.sa = sa;
  k.sb = sb;
  k.fa = (a == ga.first);
  k.fb = (b == gb.first + gb.len - 1);
  long long cap = clamp_at(q);
  long long la = std::min(ga.first + ga.len - 1, b) - a + 1;
  long long lb = b - std::max(gb.first, a) + 1;
  k.ca = std::min(la, cap);
  k.cb = std::min(lb, cap);
  return k;
}

std::size_t LineDp::KeyHash::operator()(const Key& k) const {
  std::size_t h = static_cast<std::size_t>(k.q);
  auto mix = [&h](std::size_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  mix(static_cast<std::size_t>(k.sa));
  mix(static_cast<std::size_t>(k.sb));
  mix(static_cast<std::size_t>(k.fa ? 1 : 2));
  mix(static_cast<std::size_t>(k.fb ? 3 : 4));
  mix(static_cast<std::size_t>(k.ca));
  mix(static_cast<std::size_t>(k.cb));
  return h;
}

std::vector<int> LineDp::contained_drivers(long long a, long long b) const {
  std::vector<int> out;
  for (int j = 0; j < static_cast<int>(prob_.drivers.size()); ++j)
    if (prob_.drivers[static_cast<std::size_t>(j)].left >= a &&
        prob_.drivers[static_cast<std::size_t>(j)].right <= b)
      out.push_back(j);
  return out;
}

bool LineDp::driver_free(long long a, long long b) const {
  return contained_drivers(a, b).empty();
}

DpVal LineDp::value(long long a, long long b, int level) {
  if (a < 1 || b > prob_.n_edges || a > b || level < 0 || level > levels_)
    throw InvalidParameter("value: query out of range");
  Key k = make_key(a, b, level);
  auto it = memo_.find(k);
  if (it != memo_.end()) return it->second;
  DpVal v = step_value(a, b, level);
  if (v.feasible) ++feasible_count_;
  memo_.emplace(k, v);
  return v;
}

DpVal LineDp::step_value(long long a, long long b, int q) {
  long long len = b - a + 1;
  long long wq = level_weight(q);
  if (driver_free(a, b)) {
    if (prob_.mode == DpWeights::ZeroOne) return {len >= wq, 0};
    return {true, 0};
  }
  if (q == levels_) return base_value(a, b, base_w_);
  DpVal best;
  std::vector<long long> cuts;
  enumerate_cuts(a, b, q, level_weight(q + 1), false, best, cuts);
  return best;
}

std::vector<long long> LineDp::cut_candidates(long long a, long long b, int q) const {
  if (!compressed_) {
    std::vector<long long> all;
    for (long long c = a; c <= b - 1; ++c) all.push_back(c);
    return all;
  }
  long long K = clamp_at(q);
  std::set<long long> cand;
  int sa = seg_of(a), sb = seg_of(b);
  for (const auto& p : portions_of(prob_, a, b, sa, sb)) {
    long long len = p.hi - p.lo + 1;
    long long t = std::min(K, len);
    for (long long i = 0; i <= t; ++i) {
      cand.insert(p.lo - 1 + i);
      cand.insert(p.hi - i);
    }
  }
  std::vector<long long> out;
  for (long long c : cand)
    if (c >= a && c <= b - 1) out.push_back(c);
  return out;
}

long long LineDp::credits_for(long long a, long long b,
                              const std::vector<long long>& cuts, long long wc,
                              std::vector<DpRecord>* out) const {
  // part i spans (bounds[i], bounds[i+1]]
  std::vector<long long> bounds;
  bounds.push_back(a - 1);
  for (long long c : cuts) bounds.push_back(c);
  bounds.push_back(b);
  long long total = 0;
  for (int j = 0; j < static_cast<int>(prob_.drivers.size()); ++j) {
    const auto& d = prob_.drivers[static_cast<std::size_t>(j)];
    if (d.left < a || d.right > b) continue;
    long long n = 0;
    bool inside_one = false;
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
      long long lo = bounds[i] + 1, hi = bounds[i + 1];
      if (lo > hi) continue;
      if (lo >= d.left && hi <= d.right) ++n;
      if (lo <= d.left && hi >= d.right) inside_one = true;
    }
    if (inside_one) continue;  // the driver belongs to a deeper level
    if (n < delta_) continue;
    long long credit = 0;
    if (prob_.mode == DpWeights::ZeroOne) {
      if (wc * n > d.budget) continue;
      credit = wc * n;
    } else {
      if (d.lower * delta_ > wc * n * (delta_ + 2)) continue;
      if (wc * n > d.upper) continue;
      credit = 1;
    }
    total += credit;
    if (out) out->push_back({DpRecord::GoodDriver, j, d.tag, n, credit, 0});
  }
  return total;
}

void LineDp::enumerate_cuts(long long a, long long b, int q, long long wc,
                            bool want_argmax, DpVal& best,
                            std::vector<long long>& best_cuts) {
  best = DpVal{};
  best_cuts.clear();
  std::vector<long long> cand = cut_candidates(a, b, q);
  long long min_len = (prob_.mode == DpWeights::ZeroOne) ? wc : 1;
  int parts = static_cast<int>(gamma_);
  std::vector<long long> cur(static_cast<std::size_t>(parts - 1), 0);

  // backtracking over strictly increasing candidate cut tuples, lexicographic
  auto rec = [&](auto&& self, int k, int start_idx, long long prev,
                 long long acc) -> void {
    if (k == parts - 1) {
      if (b - prev < min_len) return;
      DpVal last = value(prev + 1, b, q + 1);
      if (!last.feasible) return;
      long long v = acc + last.value + credits_for(a, b, cur, wc, nullptr);
      if (!best.feasible || v > best.value) {
        best = {true, v};
        if (want_argmax) best_cuts = cur;
      } else if (v == best.value) {
        ++ties_;
      }
      return;
    }
    for (int i = start_idx; i < static_cast<int>(cand.size()); ++i) {
      long long c = cand[static_cast<std::size_t>(i)];
      if (c - prev < min_len) continue;
      // remaining parts must fit
      if (b - c < min_len * (parts - 1 - k)) break;
      DpVal child = value(prev + 1, c, q + 1);
      if (!child.feasible) continue;
      cur[static_cast<std::size_t>(k)] = c;
      self(self, k + 1, i + 1, c, acc + child.value);
    }
  };
  rec(rec, 0, 0, a - 1, 0);
}

std::vector<long long> LineDp::step_argmax(long long a, long long b, int q) {
  DpVal best;
  std::vector<long long> cuts;
  enumerate_cuts(a, b, q, level_weight(q + 1), true, best, cuts);
  if (!best.feasible) throw InternalError("dangling argmax: no feasible partition on reconstruction");
  DpVal stored = value(a, b, q);
  if (!stored.feasible || stored.value != best.value)
    throw InternalError("argmax recomputation disagrees with the stored table value");
  return cuts;
}

DpVal LineDp::base_value(long long a, long long b, long long c,
                         const std::vector<char>* keep) const {
  BaseBest bb = base_best(a, b, c, keep);
  return {bb.feasible, bb.value};
}

LineDp::BaseBest LineDp::base_best(long long a, long long b, long long c,
                                   const std::vector<char>* keep) const {
  BaseBest out;
  auto ports = portions_of(prob_, a, b, seg_of(a), seg_of(b));
  BaseSearch search{prob_, ports, a, b, c, keep};
  search.base_delta = delta_;
  search.run();
  out.feasible = search.found;
  out.value = search.best;
  out.counts = search.best_counts;
  return out;
}

std::vector<long long> LineDp::greedy_right_composition(long long a, long long b,
                                                        long long c) const {
  auto ports = portions_of(prob_, a, b, seg_of(a), seg_of(b));
  std::vector<long long> caps;
  for (const auto& p : ports)
    caps.push_back(prob_.mode == DpWeights::ZeroOne ? p.hi - p.lo + 1 : c);
  std::vector<long long> suffix(caps.size() + 1, 0);
  for (int i = static_cast<int>(caps.size()) - 1; i >= 0; --i)
    suffix[static_cast<std::size_t>(i)] = suffix[static_cast<std::size_t>(i) + 1] + caps[static_cast<std::size_t>(i)];
  if (suffix[0] < c) throw InternalError("cannot place the level weight on a feasible path");
  std::vector<long long> counts(caps.size(), 0);
  long long rem = c;
  for (std::size_t i = 0; i < caps.size(); ++i) {
    long long v = std::max(0LL, rem - suffix[i + 1]);
    counts[i] = std::min(v, caps[i]);
    rem -= counts[i];
  }
  if (rem != 0) throw InternalError("composition accounting error");
  return counts;
}

void LineDp::place_composition(long long a, long long b,
                               const std::vector<long long>& counts,
                               DpResult& out) const {
  auto ports = portions_of(prob_, a, b, seg_of(a), seg_of(b));
  for (std::size_t i = 0; i < ports.size(); ++i) {
    if (counts[i] == 0) continue;
    if (prob_.mode == DpWeights::ZeroOne) {
      for (long long e = ports[i].lo; e < ports[i].lo + counts[i]; ++e)
        out.weights.push_back({e, 1});
    } else {
      out.weights.push_back({ports[i].lo, counts[i]});
    }
  }
}

void LineDp::rec_path(long long a, long long b, int q, DpResult& out,
                      long long& accounted) {
  auto contained = contained_drivers(a, b);
  if (contained.empty()) {
    // Integer mode: a truncated part still carries its level weight, routed
    // to the rightmost edge so the dummy ends absorb the slack.
    if (prob_.mode == DpWeights::Integer && b == prob_.n_edges) {
      if (level_weight(q) > 0) out.weights.push_back({b, level_weight(q)});
      return;
    }
    place_composition(a, b, greedy_right_composition(a, b, level_weight(q)), out);
    return;
  }
  if (q == levels_) {
    BaseBest bb = base_best(a, b, base_w_, nullptr);
    if (!bb.feasible) throw InternalError("infeasible base entry on reconstruction");
    place_composition(a, b, bb.counts, out);
    accounted += bb.value;
    auto ports = portions_of(prob_, a, b, seg_of(a), seg_of(b));
    for (int j : contained) {
      const auto& d = prob_.drivers[static_cast<std::size_t>(j)];
      long long wj = 0;
      for (std::size_t i = 0; i < ports.size(); ++i)
        if (ports[i].full && ports[i].lo >= d.left && ports[i].hi <= d.right)
          wj += bb.counts[i];
      if (prob_.mode == DpWeights::ZeroOne) {
        if (wj <= d.budget)
          out.records.push_back({DpRecord::BaseSatisfied, j, d.tag, 0, wj, wj});
      } else {
        if (d.lower * delta_ <= wj * (delta_ + 2) && wj <= d.upper)
          out.records.push_back({DpRecord::BaseSatisfied, j, d.tag, 0, 1, wj});
      }
    }
    return;
  }
  std::vector<long long> cuts = step_argmax(a, b, q);
  accounted += credits_for(a, b, cuts, level_weight(q + 1), &out.records);
  long long prev = a - 1;
  for (long long c : cuts) {
    rec_path(prev + 1, c, q + 1, out, accounted);
    prev = c;
  }
  rec_path(prev + 1, b, q + 1, out, accounted);
}

DpResult LineDp::reconstruct() {
  DpVal r = root();
  if (!r.feasible) throw InternalError("reconstruct called on an infeasible root");
  DpResult out;
  out.root_value = r.value;
  long long accounted = 0;
  rec_path(1, prob_.n_edges, 0, out, accounted);
  if (accounted != r.value)
    throw InternalError("reconstruction does not reproduce the root value");
  std::sort(out.weights.begin(), out.weights.end());
  // total weight must be exactly W'
  long long total = 0;
  for (const auto& [e, w] : out.weights) total += w;
  if (total != w_prime_) throw InternalError("reconstructed weights do not sum to W'");
  // fill in the full driver weights under the reconstructed assignment
  for (auto& rec : out.records) {
    const auto& d = prob_.drivers[static_cast<std::size_t>(rec.driver)];
    long long wj = 0;
    for (const auto& [e, w] : out.weights)
      if (e >= d.left && e <= d.right) wj += w;
    rec.weight_full = wj;
  }
  return out;
}

}  // namespace pathprice
