#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <ctime>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pathprice/dissection.hpp"
#include "pathprice/errors.hpp"
#include "pathprice/instance.hpp"
#include "pathprice/io.hpp"
#include "pathprice/maxfs.hpp"
#include "pathprice/oracle.hpp"
#include "pathprice/params.hpp"
#include "pathprice/rational.hpp"
#include "pathprice/report.hpp"
#include "pathprice/tollbooth.hpp"
#include "pathprice/wellround.hpp"

namespace {

using namespace pathprice;

// A hard comparison invariant failed (apx > opt, infeasible witness, or a
// dissection lower bound above the DP value).  Exit 5.
struct CompareViolation : std::runtime_error {
  explicit CompareViolation(const std::string& msg) : std::runtime_error(msg) {}
};

struct Options {
  std::string command;
  std::string input;
  std::string out;
  std::string algo;  // empty: inferred from the instance file
  std::string epsilon = "1/2";
  std::string mode = "derandomized";
  std::uint64_t seed = 1;
  long long gamma_ov = 0;  // 0 = no override
  long long delta_ov = 0;
  std::string base_weights_ov;  // comma separated, empty = no override
  OracleBounds bounds;
  int max_leaves = 4;
  bool audit = false;
  std::string rho = "1";
  // generate
  std::string kind = "highway";
  long long gen_n = 2;
  long long gen_m = 2;
  long long gen_max_budget = 5;
};

std::vector<long long> parse_weight_list(const std::string& s) {
  std::vector<long long> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      long long v = std::stoll(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw InvalidParameter("base-weights must be a comma separated integer list");
    }
  }
  if (out.empty()) throw InvalidParameter("base-weights must be non-empty");
  return out;
}

Params params_from(const Options& o) {
  Rat eps;
  try {
    eps = parse_rat(o.epsilon);
  } catch (const std::invalid_argument&) {
    throw InvalidParameter("epsilon must be a rational literal \"p/q\"");
  }
  ParamOverrides ov;
  if (o.gamma_ov > 0) ov.gamma = o.gamma_ov;
  if (o.delta_ov > 0) ov.delta = o.delta_ov;
  if (!o.base_weights_ov.empty()) ov.base_weights = parse_weight_list(o.base_weights_ov);
  return make_params(eps, ov);
}

SolveMode mode_from(const Options& o) {
  if (o.mode == "derandomized") return SolveMode::Derandomized;
  if (o.mode == "randomized") return SolveMode::Randomized;
  throw InvalidParameter("mode must be \"randomized\" or \"derandomized\"");
}

nlohmann::json config_json(const Options& o, const std::string& algo, const Params& p) {
  nlohmann::json c;
  c["command"] = o.command;
  c["input"] = o.input;
  c["algo"] = algo;
  c["epsilon"] = o.epsilon;
  c["mode"] = o.mode;
  c["seed"] = o.seed;
  nlohmann::json ov;
  ov["gamma"] = o.gamma_ov > 0 ? nlohmann::json(o.gamma_ov) : nlohmann::json();
  ov["delta"] = o.delta_ov > 0 ? nlohmann::json(o.delta_ov) : nlohmann::json();
  ov["base_weights"] = o.base_weights_ov.empty()
                           ? nlohmann::json()
                           : nlohmann::json(parse_weight_list(o.base_weights_ov));
  c["overrides"] = ov;
  c["guarantee_void"] = p.guarantee_void;
  c["oracle_bounds"] = {{"max_edges", o.bounds.max_edges},
                        {"max_drivers", o.bounds.max_drivers},
                        {"max_budget", o.bounds.max_budget},
                        {"max_states", o.bounds.max_states}};
  c["max_leaves"] = o.max_leaves;
  c["audit"] = o.audit;
  c["out"] = o.out.empty() ? nlohmann::json() : nlohmann::json(o.out);
  return c;
}

nlohmann::json volatile_json(std::chrono::steady_clock::time_point start) {
  auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return {{"timestamp", buf}, {"wall_ms", wall}};
}

void emit(const Options& o, const nlohmann::json& doc) {
  if (o.out.empty())
    std::cout << doc.dump(2) << "\n";
  else
    save_json_file(o.out, doc);
}

std::string resolve_algo(const Options& o, const nlohmann::json& inst) {
  std::string kind = detect_kind(inst);
  if (!o.algo.empty() && o.algo != kind)
    throw InvalidInput("the instance file is a " + kind + " instance, not " + o.algo);
  return kind;
}

// ---- solve ------------------------------------------------------------------

int cmd_solve(const Options& o) {
  auto start = std::chrono::steady_clock::now();
  Params p = params_from(o);
  SolveMode mode = mode_from(o);
  nlohmann::json ij = load_json_file(o.input);
  std::string algo = resolve_algo(o, ij);

  SolveReport report;
  if (algo == "highway") {
    HighwayOptions hopt{p, mode, o.seed, true, o.audit};
    report = run_hptas(highway_from_json(ij), hopt);
  } else if (algo == "tollbooth") {
    TollboothOptions topt{p, mode, o.seed, o.max_leaves, o.audit};
    report = run_tollbooth(tollbooth_from_json(ij), topt);
  } else {
    MaxFSOptions mopt{p, mode, o.seed, true, o.audit};
    report = run_maxfs(maxfs_from_json(ij), mopt).report;
  }
  report.config = config_json(o, algo, p);
  report.volatile_info = volatile_json(start);
  emit(o, report_to_json(report));
  return 0;
}

// ---- oracle -----------------------------------------------------------------

int cmd_oracle(const Options& o) {
  auto start = std::chrono::steady_clock::now();
  Params p = params_from(o);
  nlohmann::json ij = load_json_file(o.input);
  std::string algo = resolve_algo(o, ij);

  nlohmann::json doc;
  if (algo == "highway") {
    HighwayInstance inst = highway_from_json(ij);
    auto res = exact_highway_bruteforce(inst, o.bounds);
    doc["opt"] = rat_to_json(res.opt);
    doc["weights"] = res.weights;
    doc["satisfied"] = res.satisfied;
  } else if (algo == "tollbooth") {
    TreeInstance inst = tollbooth_from_json(ij);
    auto res = exact_tollbooth(inst, o.bounds);
    doc["opt"] = rat_to_json(res.opt);
    doc["weights"] = res.weights;
    doc["satisfied"] = res.satisfied;
  } else {
    MaxFSInstance inst = maxfs_from_json(ij);
    Rat rho;
    try {
      rho = parse_rat(o.rho);
    } catch (const std::invalid_argument&) {
      throw InvalidParameter("rho must be a rational literal \"p/q\"");
    }
    auto res = exact_maxfs(inst, o.bounds, rho);
    doc["opt"] = rat_to_json(res.opt_weight);
    doc["rows"] = res.rows;
    nlohmann::json wit = nlohmann::json::array();
    for (const auto& w : res.witness) wit.push_back(rat_to_json(w));
    doc["witness"] = wit;
  }
  doc["config"] = config_json(o, algo, p);
  doc["volatile"] = volatile_json(start);
  emit(o, doc);
  return 0;
}

// ---- compare ----------------------------------------------------------------

// W* cap for the per-(x,y) dissection check: each x needs a full DP run, so
// the check is skipped (and reported as unchecked) on anything larger.
constexpr long long kDissectionCapWStar = 64;
constexpr long long kDissectionCapExpanded = 96;

void check_highway_corollary1(const HighwayInstance& inst, const Params& p,
                              const Options& o, nlohmann::json& record,
                              std::vector<std::string>& violations) {
  record["corollary1_checked"] = false;
  record["corollary1_holds"] = nullptr;
  WellRoundedInstance wr = well_round(inst, p.eps);
  if (wr.trivial || wr.drivers.empty()) {
    record["corollary1_checked"] = true;
    record["corollary1_holds"] = true;
    return;
  }
  if (wr.n_expanded > kDissectionCapExpanded) return;

  // oracle optimum of the rounded instance at original-edge granularity
  // (uniform expansion makes block-granular weights fully general)
  HighwayInstance blk;
  blk.n_edges = inst.n_edges;
  for (const auto& d : wr.drivers) {
    const auto& od = inst.drivers[static_cast<std::size_t>(d.orig)];
    blk.drivers.push_back({od.left, od.right, Rat(d.budget)});
  }
  HighwayOracleResult res;
  try {
    res = exact_highway_bruteforce(blk, o.bounds);
  } catch (const BoundsRefused&) {
    return;
  }
  long long total = 0;
  for (long long w : res.weights) total += w;
  long long w_star = padded_power(p.gamma, total);
  if (w_star > kDissectionCapWStar) return;

  bool holds = true;
  nlohmann::json table = nlohmann::json::array();
  for (long long y = 1; y <= static_cast<long long>(p.base_weights.size()); ++y) {
    for (long long x = 1; x <= w_star; ++x) {
      DpVal phi = hptas_root_value(wr, w_star, x, y, p);
      long long apx_o = optimal_dissection_value(wr, res.weights, res.satisfied, x, y, p);
      bool ok = phi.feasible && phi.value >= apx_o;
      if (!ok) holds = false;
      table.push_back({{"x", x}, {"y", y}, {"phi", phi.value},
                       {"feasible", phi.feasible}, {"apx_o", apx_o}, {"holds", ok}});
    }
  }
  record["corollary1_checked"] = true;
  record["corollary1_holds"] = holds;
  record["dissection_table"] = table;
  if (!holds)
    violations.push_back("dissection bound violated: phi(G0,W') < apx_O for some (x,y)");
}

void check_maxfs_corollary1(const MaxFSInstance& inst, const Params& p,
                            const Options& o, nlohmann::json& record,
                            std::vector<std::string>& violations) {
  record["corollary1_checked"] = false;
  record["corollary1_holds"] = nullptr;
  MaxFSOracleResult strict;
  try {
    strict = exact_maxfs(inst, o.bounds, Rat(1));
  } catch (const BoundsRefused&) {
    return;
  }
  std::vector<long long> w_orig;
  long long total = 0;
  for (const auto& w : strict.witness) {
    if (denominator(w) != 1) return;  // oracle witnesses are integral by construction
    w_orig.push_back(to_i64(numerator(w)));
    total += w_orig.back();
  }
  long long w_star = padded_power(p.gamma, total);
  if (w_star > kDissectionCapWStar) return;

  bool holds = true;
  nlohmann::json table = nlohmann::json::array();
  for (long long y = 1; y <= static_cast<long long>(p.base_weights.size()); ++y) {
    DpVal phi = maxfs_root_value(inst, p, w_star, y);
    for (long long x = 1; x <= w_star; ++x) {
      long long cnt = maxfs_dissection_count(inst, p, w_orig, strict.rows, w_star, x, y);
      bool ok = phi.feasible && phi.value >= cnt;
      if (!ok) holds = false;
      table.push_back({{"x", x}, {"y", y}, {"phi", phi.value},
                       {"feasible", phi.feasible}, {"count", cnt}, {"holds", ok}});
    }
  }
  record["corollary1_checked"] = true;
  record["corollary1_holds"] = holds;
  record["dissection_table"] = table;
  if (!holds)
    violations.push_back("dissection bound violated: phi(G0,W') < induced count for some x");
}

int cmd_compare(const Options& o) {
  auto start = std::chrono::steady_clock::now();
  Params p = params_from(o);
  SolveMode mode = mode_from(o);
  nlohmann::json ij = load_json_file(o.input);
  std::string algo = resolve_algo(o, ij);

  nlohmann::json record;
  std::vector<std::string> violations;
  Rat apx, opt;
  bool feasible = false;
  nlohmann::json diagnostics;

  if (algo == "highway") {
    HighwayInstance inst = highway_from_json(ij);
    HighwayOptions hopt{p, mode, o.seed, true, o.audit};
    SolveReport rep = run_hptas(inst, hopt);
    auto orc = exact_highway_bruteforce(inst, o.bounds);
    apx = rep.profit;
    opt = orc.opt;
    feasible = true;
    for (const auto& w : rep.weights.weights)
      if (w < 0) feasible = false;
    if (profit(inst, rep.weights) != rep.profit) feasible = false;
    diagnostics = rep.diagnostics;
    check_highway_corollary1(inst, p, o, record, violations);
  } else if (algo == "tollbooth") {
    TreeInstance inst = tollbooth_from_json(ij);
    TollboothOptions topt{p, mode, o.seed, o.max_leaves, o.audit};
    SolveReport rep = run_tollbooth(inst, topt);
    auto orc = exact_tollbooth(inst, o.bounds);
    apx = rep.profit;
    opt = orc.opt;
    feasible = true;
    for (const auto& w : rep.weights.weights)
      if (w < 0) feasible = false;
    if (tree_profit(inst, rep.weights) != rep.profit) feasible = false;
    diagnostics = rep.diagnostics;
  } else {
    MaxFSInstance inst = maxfs_from_json(ij);
    MaxFSOptions mopt{p, mode, o.seed, true, o.audit};
    MaxFSResult res = run_maxfs(inst, mopt);
    Rat rho(p.delta + 2, p.delta);  // 1 + 4*eps
    auto orc = exact_maxfs(inst, o.bounds, rho);
    apx = res.weighted_count;
    opt = orc.opt_weight;
    feasible = true;
    for (int j : res.rows) {
      const auto& row = inst.rows[static_cast<std::size_t>(j)];
      Rat fin = res.achieved[static_cast<std::size_t>(j)] * rho;
      if (fin < Rat(row.lower) || fin > Rat(row.upper) * rho * rho) feasible = false;
    }
    diagnostics = res.report.diagnostics;
    check_maxfs_corollary1(inst, p, o, record, violations);
  }

  if (apx > opt) violations.push_back("apx exceeds the oracle optimum");
  if (!feasible) violations.push_back("returned assignment is not feasible for the reported value");

  record["apx"] = rat_to_json(apx);
  record["opt"] = rat_to_json(opt);
  if (opt > 0)
    record["ratio"] = rat_str(apx / opt);
  else
    record["ratio"] = apx == 0 ? nlohmann::json("1") : nlohmann::json();
  record["feasible"] = feasible;
  if (mode == SolveMode::Derandomized) record["table"] = diagnostics["guesses"];
  record["violations"] = violations;
  record["config"] = config_json(o, algo, p);
  record["volatile"] = volatile_json(start);
  emit(o, record);
  if (!violations.empty()) throw CompareViolation(violations.front());
  return 0;
}

// ---- generate ---------------------------------------------------------------

TreeInstance generate_tree(long long n_edges, long long m, long long max_budget,
                           std::uint64_t seed, int max_leaves) {
  SplitRng rng(seed);
  int nv = static_cast<int>(n_edges) + 1;
  TreeInstance inst;
  inst.n_nodes = nv;
  inst.source = 1;
  for (int attempt = 0; attempt < 200; ++attempt) {
    inst.edges.clear();
    // node 1 stays a leaf (the source); later nodes attach inside the rest
    if (nv >= 2) inst.edges.push_back({1, 2});
    for (int v = 3; v <= nv; ++v)
      inst.edges.push_back({static_cast<int>(rng.uniform(2, v - 1)), v});
    if (leaf_count(inst) <= max_leaves) break;
    if (attempt == 199) {  // fall back to a path
      inst.edges.clear();
      for (int v = 2; v <= nv; ++v) inst.edges.push_back({v - 1, v});
    }
  }
  for (long long j = 0; j < m; ++j) {
    int u = static_cast<int>(rng.uniform(1, nv));
    int v = static_cast<int>(rng.uniform(1, nv - 1));
    if (v >= u) ++v;
    inst.drivers.push_back({u, v, Rat(rng.uniform(0, max_budget))});
  }
  return inst;
}

MaxFSInstance generate_maxfs(long long n, long long m, long long max_budget,
                             std::uint64_t seed) {
  SplitRng rng(seed);
  MaxFSInstance inst;
  inst.n = n;
  for (long long j = 0; j < m; ++j) {
    MaxFSRow r;
    r.left = rng.uniform(1, n);
    r.right = rng.uniform(r.left, n);
    r.upper = rng.uniform(0, max_budget);
    r.lower = rng.uniform(0, r.upper);
    r.profit = Rat(rng.uniform(0, max_budget));
    inst.rows.push_back(r);
  }
  return inst;
}

int cmd_generate(const Options& o) {
  if (o.gen_n < 1) throw InvalidParameter("n must be positive");
  if (o.gen_m < 0) throw InvalidParameter("m must be non-negative");
  if (o.gen_max_budget < 0) throw InvalidParameter("max-budget must be non-negative");
  nlohmann::json doc;
  if (o.kind == "highway") {
    doc = highway_to_json(generate_random(o.gen_n, o.gen_m, o.gen_max_budget, o.seed));
  } else if (o.kind == "tollbooth") {
    doc = tollbooth_to_json(
        generate_tree(o.gen_n, o.gen_m, o.gen_max_budget, o.seed, o.max_leaves));
  } else if (o.kind == "maxfs") {
    doc = maxfs_to_json(generate_maxfs(o.gen_n, o.gen_m, o.gen_max_budget, o.seed));
  } else {
    throw InvalidParameter("kind must be highway, tollbooth or maxfs");
  }
  emit(o, doc);
  return 0;
}

void add_common(CLI::App* cmd, Options& o, bool needs_input) {
  if (needs_input)
    cmd->add_option("input", o.input, "instance file (JSON)")->required();
  cmd->add_option("--algo", o.algo, "highway | tollbooth | maxfs (default: from the file)");
  cmd->add_option("--epsilon", o.epsilon, "rational epsilon, 1/(2 eps) integer (default 1/2)");
  cmd->add_option("--mode", o.mode, "randomized | derandomized");
  cmd->add_option("--seed", o.seed, "seed for randomized mode and generators");
  cmd->add_option("--gamma", o.gamma_ov, "override gamma (voids the guarantee)");
  cmd->add_option("--delta", o.delta_ov, "override delta (voids the guarantee)");
  cmd->add_option("--base-weights", o.base_weights_ov,
                  "override the base weight list, e.g. 2,4 (voids the guarantee)");
  cmd->add_option("--oracle-max-edges", o.bounds.max_edges, "oracle refusal cap");
  cmd->add_option("--oracle-max-drivers", o.bounds.max_drivers, "oracle refusal cap");
  cmd->add_option("--oracle-max-budget", o.bounds.max_budget, "oracle refusal cap");
  cmd->add_option("--max-leaves", o.max_leaves, "tollbooth leaf cap (default 4)");
  cmd->add_flag("--audit", o.audit, "include per-draw driver records");
  cmd->add_option("--out", o.out, "write the report here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"exact-rational solver suite for highway / tollbooth / interval MaxFS pricing"};
  app.require_subcommand(1);

  CLI::App* solve = app.add_subcommand("solve", "run the approximation scheme");
  add_common(solve, o, true);
  CLI::App* oracle = app.add_subcommand("oracle", "run the exact brute-force oracle");
  add_common(oracle, o, true);
  oracle->add_option("--rho", o.rho, "MaxFS bound relaxation factor (rational, >= 1)");
  CLI::App* compare = app.add_subcommand("compare", "run solver and oracle, check invariants");
  add_common(compare, o, true);
  CLI::App* generate = app.add_subcommand("generate", "write a seeded random instance");
  add_common(generate, o, false);
  generate->add_option("--kind", o.kind, "highway | tollbooth | maxfs");
  generate->add_option("--n", o.gen_n, "edges / columns");
  generate->add_option("--m", o.gen_m, "drivers / rows");
  generate->add_option("--max-budget", o.gen_max_budget, "budget and profit cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (solve->parsed()) { o.command = "solve"; return cmd_solve(o); }
    if (oracle->parsed()) { o.command = "oracle"; return cmd_oracle(o); }
    if (compare->parsed()) { o.command = "compare"; return cmd_compare(o); }
    o.command = "generate";
    return cmd_generate(o);
  } catch (const CompareViolation& e) {
    std::cerr << "comparison invariant violated: " << e.what() << "\n";
    return 5;
  } catch (const BoundsRefused& e) {
    std::cerr << "oracle bounds refused: " << e.what() << "\n";
    return 4;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const InvalidParameter& e) {
    std::cerr << "invalid parameter: " << e.what() << "\n";
    return 2;
  } catch (const UnsupportedInstance& e) {
    std::cerr << "unsupported instance: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid parameter: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
