#include "pathprice/io.hpp"

#include <fstream>

#include "pathprice/errors.hpp"

namespace pathprice {

Rat rat_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rat(static_cast<long long>(j.get<std::int64_t>()));
  if (j.is_number_unsigned()) return Rat(static_cast<unsigned long long>(j.get<std::uint64_t>()));
  if (j.is_number_float())
    throw InvalidInput("floating-point literals are not accepted; use an integer or \"p/q\"");
  if (j.is_string()) {
    try {
      return parse_rat(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw InvalidInput(e.what());
    }
  }
  throw InvalidInput("expected an integer or a \"p/q\" string");
}

nlohmann::json rat_to_json(const Rat& r) {
  if (denominator(r) == 1 && numerator(r) >= INT64_MIN && numerator(r) <= INT64_MAX)
    return static_cast<std::int64_t>(numerator(r));
  return rat_str(r);
}

std::string detect_kind(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw InvalidInput("instance file must be an object with a \"kind\" string");
  std::string kind = j["kind"].get<std::string>();
  if (kind != "highway" && kind != "tollbooth" && kind != "maxfs")
    throw InvalidInput("unknown instance kind: " + kind);
  return kind;
}

namespace {

long long get_int(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw InvalidInput(std::string("missing or non-integer field: ") + key);
  return j[key].get<long long>();
}

}  // namespace

HighwayInstance highway_from_json(const nlohmann::json& j) {
  if (detect_kind(j) != "highway") throw InvalidInput("expected kind \"highway\"");
  HighwayInstance inst;
  inst.n_edges = get_int(j, "n");
  if (!j.contains("drivers") || !j["drivers"].is_array())
    throw InvalidInput("missing \"drivers\" array");
  for (const auto& dj : j["drivers"]) {
    Driver d;
    d.left = get_int(dj, "left");
    d.right = get_int(dj, "right");
    if (!dj.contains("budget")) throw InvalidInput("driver without budget");
    d.budget = rat_from_json(dj["budget"]);
    inst.drivers.push_back(d);
  }
  auto violations = validate(inst);
  if (!violations.empty()) throw InvalidInput(violations.front());
  return inst;
}

nlohmann::json highway_to_json(const HighwayInstance& inst) {
  nlohmann::json j;
  j["kind"] = "highway";
  j["n"] = inst.n_edges;
  j["drivers"] = nlohmann::json::array();
  for (const auto& d : inst.drivers)
    j["drivers"].push_back({{"left", d.left}, {"right", d.right}, {"budget", rat_to_json(d.budget)}});
  return j;
}

TreeInstance tollbooth_from_json(const nlohmann::json& j) {
  if (detect_kind(j) != "tollbooth") throw InvalidInput("expected kind \"tollbooth\"");
  TreeInstance inst;
  inst.n_nodes = static_cast<int>(get_int(j, "nodes"));
  inst.source = static_cast<int>(get_int(j, "source"));
  if (!j.contains("edges") || !j["edges"].is_array())
    throw InvalidInput("missing \"edges\" array");
  for (const auto& ej : j["edges"]) {
    if (!ej.is_array() || ej.size() != 2)
      throw InvalidInput("each edge must be a [u, v] pair");
    inst.edges.push_back({ej[0].get<int>(), ej[1].get<int>()});
  }
  if (!j.contains("drivers") || !j["drivers"].is_array())
    throw InvalidInput("missing \"drivers\" array");
  for (const auto& dj : j["drivers"]) {
    TreeDriver d;
    d.u = static_cast<int>(get_int(dj, "u"));
    d.v = static_cast<int>(get_int(dj, "v"));
    if (!dj.contains("budget")) throw InvalidInput("driver without budget");
    d.budget = rat_from_json(dj["budget"]);
    inst.drivers.push_back(d);
  }
  return inst;
}

nlohmann::json tollbooth_to_json(const TreeInstance& inst) {
  nlohmann::json j;
  j["kind"] = "tollbooth";
  j["nodes"] = inst.n_nodes;
  j["source"] = inst.source;
  j["edges"] = nlohmann::json::array();
  for (const auto& e : inst.edges) j["edges"].push_back({e.first, e.second});
  j["drivers"] = nlohmann::json::array();
  for (const auto& d : inst.drivers)
    j["drivers"].push_back({{"u", d.u}, {"v", d.v}, {"budget", rat_to_json(d.budget)}});
  return j;
}

MaxFSInstance maxfs_from_json(const nlohmann::json& j) {
  if (detect_kind(j) != "maxfs") throw InvalidInput("expected kind \"maxfs\"");
  MaxFSInstance inst;
  inst.n = get_int(j, "n");
  if (!j.contains("rows") || !j["rows"].is_array())
    throw InvalidInput("missing \"rows\" array");
  for (const auto& rj : j["rows"]) {
    MaxFSRow r;
    r.left = get_int(rj, "left");
    r.right = get_int(rj, "right");
    r.lower = get_int(rj, "lower");
    r.upper = get_int(rj, "upper");
    if (!rj.contains("profit")) throw InvalidInput("row without profit");
    r.profit = rat_from_json(rj["profit"]);
    inst.rows.push_back(r);
  }
  auto violations = validate(inst);
  if (!violations.empty()) throw InvalidInput(violations.front());
  return inst;
}

nlohmann::json maxfs_to_json(const MaxFSInstance& inst) {
  nlohmann::json j;
  j["kind"] = "maxfs";
  j["n"] = inst.n;
  j["rows"] = nlohmann::json::array();
  for (const auto& r : inst.rows)
    j["rows"].push_back({{"left", r.left},
                         {"right", r.right},
                         {"lower", r.lower},
                         {"upper", r.upper},
                         {"profit", rat_to_json(r.profit)}});
  return j;
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open file: " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
  return j;
}

void save_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace pathprice
