#pragma once

// JSON file formats.
//
// Capacity:
//   { "states": ["a","b"], "values": {"0b00":0, "0b01":0.6, "0b10":0.5, "0b11":1} }
//   { "states": [...], "generator": {"kind":"distorted", "weights":[...], "power":0.5} }
//   { "generator": {"kind":"distorted", "weights":[...], "knots":[[0,0],[0.5,0.8],[1,1]]} }
//   { "generator": {"kind":"probability", "weights":[...]} }
// Mask keys are "0b" followed by binary digits with state 0 as the rightmost
// bit, or plain decimal integers. All 2^n values must be listed. When both
// "values" and "generator" are present, "values" is used.
//
// Family:
//   { "states": [...], "capacities": [ <capacity>, ... ] }
// Members without "states" inherit the family's. A bare capacity object is
// read as a one-member family.
//
// Point set:
//   { "states": ["a","b"], "points": [[1.0,0.0],[2.0,1.0]] }

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sublin/capacity.hpp"
#include "sublin/measurable.hpp"

namespace sublin {

/// Malformed input file or argument. The message names the file and the
/// offending field (or line/column for JSON syntax errors).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PointSet {
  StateSpace space;
  std::vector<RandomVariable> points;
};

nlohmann::json load_json_file(const std::filesystem::path& path);

Capacity parse_capacity(const nlohmann::json& j, const std::string& where = "capacity",
                        const StateSpace* inherited = nullptr);
CapacityFamily parse_family(const nlohmann::json& j);
PointSet parse_point_set(const nlohmann::json& j);

Capacity load_capacity_file(const std::filesystem::path& path);
CapacityFamily load_family_file(const std::filesystem::path& path);
PointSet load_point_set_file(const std::filesystem::path& path);

/// Comma-separated coordinates, e.g. "1,0.5".
RandomVariable parse_point_text(std::string_view text);

/// Parses "0b0101" or "5" into a mask, checking it fits n states.
SubsetMask parse_mask_key(std::string_view key, std::size_t n_states);
/// "0b" followed by n binary digits, state 0 rightmost.
std::string format_mask_key(SubsetMask s, std::size_t n_states);

/// Explicit-values form of a capacity.
nlohmann::ordered_json capacity_to_json(const Capacity& mu);

}  // namespace sublin
