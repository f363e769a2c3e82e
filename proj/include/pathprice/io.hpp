#pragma once

#include <json.hpp>

#include <string>

#include "pathprice/instance.hpp"
#include "pathprice/maxfs.hpp"
#include "pathprice/rational.hpp"
#include "pathprice/tollbooth.hpp"

namespace pathprice {

// Numbers that must stay exact are accepted as JSON integers or as strings
// "p/q" / "p"; float literals are rejected outright.
Rat rat_from_json(const nlohmann::json& j);
nlohmann::json rat_to_json(const Rat& r);

// "highway", "tollbooth" or "maxfs"; throws InvalidInput otherwise.
std::string detect_kind(const nlohmann::json& j);

HighwayInstance highway_from_json(const nlohmann::json& j);
nlohmann::json highway_to_json(const HighwayInstance& inst);

TreeInstance tollbooth_from_json(const nlohmann::json& j);
nlohmann::json tollbooth_to_json(const TreeInstance& inst);

MaxFSInstance maxfs_from_json(const nlohmann::json& j);
nlohmann::json maxfs_to_json(const MaxFSInstance& inst);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace pathprice
