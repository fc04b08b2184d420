#pragma once

#include <json.hpp>
#include <memory>
#include <string>

#include "ghostaut/cover.hpp"
#include "ghostaut/ghost.hpp"
#include "ghostaut/scan.hpp"

namespace ghostaut {

using json = nlohmann::json;

// all parse functions throw ParseError on malformed input
json read_json_file(const std::string& path);

// {"name", "table"} | {"name", "perm_generators"} | "S3"
std::shared_ptr<const FiniteGroup> group_from_json(const json& j);
// built-in name or path to a JSON file
std::shared_ptr<const FiniteGroup> group_from_spec(const std::string& spec);
json group_info_json(const FiniteGroup& g);

Graph graph_from_json(const json& j);
json graph_to_json(const Graph& g);
DecoratedGraph decorated_from_json(const json& j);
json decorated_to_json(const DecoratedGraph& d);

CoverDatum cover_from_json(const json& j);
json cover_to_json(const CoverDatum& d);

// ghost elements keyed by the original base edge ids
json ghost_element_json(const GhostElement& a, const CoverContraction& c);
json verdict_to_json(const JuniorVerdict& v, const CoverContraction& c);

ScanBounds bounds_from_json(const json& j);
json bounds_to_json(const ScanBounds& b);
json scan_result_to_json(const ScanResult& r);
std::string scan_result_to_csv(const ScanResult& r);

}  // namespace ghostaut
