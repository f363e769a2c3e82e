#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

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

namespace py = pybind11;
using namespace pathprice;

// The module speaks JSON strings: instances and reports use the same exact
// rational encodings as the CLI, so nothing is lost crossing the boundary.

namespace {

Params params_of(const std::string& epsilon) {
  return make_params(parse_rat(epsilon));
}

SolveMode mode_of(const std::string& mode) {
  if (mode == "derandomized") return SolveMode::Derandomized;
  if (mode == "randomized") return SolveMode::Randomized;
  throw InvalidParameter("mode must be \"randomized\" or \"derandomized\"");
}

std::string solve(const std::string& instance, const std::string& epsilon,
                  const std::string& mode, std::uint64_t seed, int max_leaves,
                  bool audit) {
  nlohmann::json ij = nlohmann::json::parse(instance);
  std::string kind = detect_kind(ij);
  Params p = params_of(epsilon);
  SolveMode m = mode_of(mode);
  SolveReport rep;
  if (kind == "highway") {
    rep = run_hptas(highway_from_json(ij), {p, m, seed, true, audit});
  } else if (kind == "tollbooth") {
    rep = run_tollbooth(tollbooth_from_json(ij), {p, m, seed, max_leaves, audit});
  } else {
    rep = run_maxfs(maxfs_from_json(ij), {p, m, seed, true, audit}).report;
  }
  return report_to_string(rep);
}

std::string oracle(const std::string& instance, long long max_edges,
                   long long max_drivers, long long max_budget,
                   const std::string& rho) {
  nlohmann::json ij = nlohmann::json::parse(instance);
  std::string kind = detect_kind(ij);
  OracleBounds b;
  b.max_edges = max_edges;
  b.max_drivers = max_drivers;
  b.max_budget = max_budget;
  nlohmann::json doc;
  if (kind == "highway") {
    auto res = exact_highway_bruteforce(highway_from_json(ij), b);
    doc = {{"opt", rat_to_json(res.opt)}, {"weights", res.weights},
           {"satisfied", res.satisfied}};
  } else if (kind == "tollbooth") {
    auto res = exact_tollbooth(tollbooth_from_json(ij), b);
    doc = {{"opt", rat_to_json(res.opt)}, {"weights", res.weights},
           {"satisfied", res.satisfied}};
  } else {
    auto res = exact_maxfs(maxfs_from_json(ij), b, parse_rat(rho));
    nlohmann::json wit = nlohmann::json::array();
    for (const auto& w : res.witness) wit.push_back(rat_to_json(w));
    doc = {{"opt", rat_to_json(res.opt_weight)}, {"rows", res.rows},
           {"witness", wit}};
  }
  return doc.dump(2);
}

std::string generate(long long n, long long m, long long max_budget,
                     std::uint64_t seed) {
  return highway_to_json(generate_random(n, m, max_budget, seed)).dump(2);
}

std::string profit_of(const std::string& instance,
                      const std::vector<std::string>& weights) {
  nlohmann::json ij = nlohmann::json::parse(instance);
  std::string kind = detect_kind(ij);
  WeightAssignment w;
  for (const auto& s : weights) w.weights.push_back(parse_rat(s));
  if (kind == "highway") return rat_str(profit(highway_from_json(ij), w));
  if (kind == "tollbooth") return rat_str(tree_profit(tollbooth_from_json(ij), w));
  throw InvalidInput("profit is defined for highway and tollbooth instances");
}

}  // namespace

PYBIND11_MODULE(pathprice, m) {
  m.doc() = "exact-rational solver suite for highway / tollbooth / interval MaxFS pricing";

  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<InvalidParameter>(m, "InvalidParameter", PyExc_ValueError);
  py::register_exception<UnsupportedInstance>(m, "UnsupportedInstance", PyExc_ValueError);
  py::register_exception<BoundsRefused>(m, "BoundsRefused", PyExc_RuntimeError);
  py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);

  m.def("solve", &solve, py::arg("instance"), py::arg("epsilon") = "1/2",
        py::arg("mode") = "derandomized", py::arg("seed") = 1,
        py::arg("max_leaves") = 4, py::arg("audit") = false,
        "Run the approximation scheme on a JSON instance; returns the report as JSON.");
  m.def("oracle", &oracle, py::arg("instance"), py::arg("max_edges") = 6,
        py::arg("max_drivers") = 10, py::arg("max_budget") = 64,
        py::arg("rho") = "1",
        "Exact brute-force optimum of a tiny JSON instance.");
  m.def("generate", &generate, py::arg("n"), py::arg("m"),
        py::arg("max_budget"), py::arg("seed") = 1,
        "Seeded random highway instance as JSON.");
  m.def("profit", &profit_of, py::arg("instance"), py::arg("weights"),
        "Exact profit of a weight assignment (rational strings) on an instance.");
}
