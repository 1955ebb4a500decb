#include "sublin/io.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace sublin {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

const json& require_field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected a JSON object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

double as_real(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

std::vector<double> as_real_array(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(as_real(j[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

StateSpace parse_states(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of state labels");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) fail(where + "[" + std::to_string(i) + "]", "expected a string");
    labels.push_back(j[i].get<std::string>());
  }
  try {
    return StateSpace(std::move(labels));
  } catch (const DomainError& e) {
    fail(where, e.what());
  }
}

Distortion parse_distortion(const json& g, const std::string& where) {
  const bool has_power = g.contains("power");
  const bool has_knots = g.contains("knots");
  if (has_power == has_knots) fail(where, "distorted generator needs exactly one of 'power' or 'knots'");
  if (has_power) return PowerDistortion{as_real(g["power"], where + ".power")};
  const auto& knots = g["knots"];
  if (!knots.is_array()) fail(where + ".knots", "expected an array of [p, f(p)] pairs");
  PiecewiseLinearDistortion pl;
  for (std::size_t i = 0; i < knots.size(); ++i) {
    const auto pair = as_real_array(knots[i], where + ".knots[" + std::to_string(i) + "]");
    if (pair.size() != 2) fail(where + ".knots[" + std::to_string(i) + "]", "expected [p, f(p)]");
    pl.knots.emplace_back(pair[0], pair[1]);
  }
  return pl;
}

}  // namespace

nlohmann::json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string() + ": cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

SubsetMask parse_mask_key(std::string_view key, std::size_t n_states) {
  std::uint64_t bits = 0;
  std::string_view digits = key;
  int base = 10;
  if (key.size() > 2 && key[0] == '0' && (key[1] == 'b' || key[1] == 'B')) {
    digits = key.substr(2);
    base = 2;
  }
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), bits, base);
  if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw InputError("invalid subset key '" + std::string(key) + "'");
  }
  if (bits >= (std::uint64_t{1} << n_states)) {
    throw InputError("subset key '" + std::string(key) + "' exceeds " + std::to_string(n_states) +
                     " states");
  }
  return SubsetMask{static_cast<std::uint32_t>(bits)};
}

std::string format_mask_key(SubsetMask s, std::size_t n_states) {
  std::string out = "0b";
  for (std::size_t i = n_states; i-- > 0;) out += s.contains(i) ? '1' : '0';
  return out;
}

Capacity parse_capacity(const json& j, const std::string& where, const StateSpace* inherited) {
  if (!j.is_object()) fail(where, "expected a JSON object");
  std::optional<StateSpace> space;
  if (j.contains("states")) {
    space = parse_states(j["states"], where + ".states");
  } else if (inherited) {
    space = *inherited;
  }

  try {
    if (j.contains("values")) {
      if (!space) fail(where, "explicit 'values' need a 'states' list");
      const auto& values = j["values"];
      if (!values.is_object()) fail(where + ".values", "expected an object of subset -> value");
      std::vector<double> table(space->subset_count(), 0.0);
      std::vector<bool> seen(table.size(), false);
      for (const auto& [key, val] : values.items()) {
        SubsetMask m;
        try {
          m = parse_mask_key(key, space->size());
        } catch (const InputError& e) {
          fail(where + ".values", e.what());
        }
        if (seen[m.bits]) fail(where + ".values", "subset key '" + key + "' given twice");
        seen[m.bits] = true;
        table[m.bits] = as_real(val, where + ".values[\"" + key + "\"]");
      }
      for (std::size_t s = 0; s < seen.size(); ++s) {
        if (!seen[s]) {
          fail(where + ".values", "missing value for subset " +
                                      format_mask_key(SubsetMask{static_cast<std::uint32_t>(s)},
                                                      space->size()));
        }
      }
      return validate_capacity(*space, std::move(table));
    }

    if (!j.contains("generator")) fail(where, "needs either 'values' or 'generator'");
    const auto& g = j["generator"];
    const std::string gwhere = where + ".generator";
    const auto& kind_j = require_field(g, "kind", gwhere);
    if (!kind_j.is_string()) fail(gwhere + ".kind", "expected a string");
    const auto kind = kind_j.get<std::string>();
    const auto weights = as_real_array(require_field(g, "weights", gwhere), gwhere + ".weights");
    if (!space) {
      if (weights.empty() || weights.size() > kMaxStates) fail(gwhere + ".weights", "bad length");
      space = StateSpace::with_size(weights.size());
    }
    if (kind == "probability") return from_probability(*space, weights);
    if (kind == "distorted") return distorted_probability(*space, weights, parse_distortion(g, gwhere));
    fail(gwhere + ".kind", "unknown generator kind '" + kind + "'");
  } catch (const CapacityError& e) {
    fail(where, std::string("invalid capacity: ") + e.what());
  } catch (const DomainError& e) {
    fail(where, e.what());
  }
}

CapacityFamily parse_family(const json& j) {
  if (!j.is_object()) fail("family", "expected a JSON object");
  if (!j.contains("capacities")) {
    return CapacityFamily({parse_capacity(j, "family")});
  }
  std::optional<StateSpace> space;
  if (j.contains("states")) space = parse_states(j["states"], "family.states");
  const auto& caps = j["capacities"];
  if (!caps.is_array()) fail("family.capacities", "expected an array");
  if (caps.empty()) fail("family.capacities", "family must have at least one capacity");
  std::vector<Capacity> members;
  for (std::size_t i = 0; i < caps.size(); ++i) {
    members.push_back(
        parse_capacity(caps[i], "family.capacities[" + std::to_string(i) + "]", space ? &*space : nullptr));
  }
  try {
    return CapacityFamily(std::move(members));
  } catch (const DomainError& e) {
    fail("family", e.what());
  }
}

PointSet parse_point_set(const json& j) {
  const auto space = parse_states(require_field(j, "states", "point_set"), "point_set.states");
  const auto& pts = require_field(j, "points", "point_set");
  if (!pts.is_array()) fail("point_set.points", "expected an array");
  PointSet out{space, {}};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::string w = "point_set.points[" + std::to_string(i) + "]";
    auto v = as_real_array(pts[i], w);
    if (v.size() != space.size()) fail(w, "expected " + std::to_string(space.size()) + " coordinates");
    try {
      RandomVariable x(std::move(v));
      require_cone_point(x, space.size());
      out.points.push_back(std::move(x));
    } catch (const DomainError& e) {
      fail(w, e.what());
    }
  }
  return out;
}

namespace {

template <class F>
auto with_file_context(const std::filesystem::path& path, F&& f) {
  const auto j = load_json_file(path);
  try {
    return f(j);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

}  // namespace

Capacity load_capacity_file(const std::filesystem::path& path) {
  return with_file_context(path, [](const json& j) { return parse_capacity(j); });
}

CapacityFamily load_family_file(const std::filesystem::path& path) {
  return with_file_context(path, [](const json& j) { return parse_family(j); });
}

PointSet load_point_set_file(const std::filesystem::path& path) {
  return with_file_context(path, [](const json& j) { return parse_point_set(j); });
}

RandomVariable parse_point_text(std::string_view text) {
  std::vector<double> v;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    auto tok = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    double d = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), d);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw InputError("invalid point '" + std::string(text) + "'");
    }
    v.push_back(d);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  try {
    return RandomVariable(std::move(v));
  } catch (const DomainError& e) {
    throw InputError("invalid point '" + std::string(text) + "': " + e.what());
  }
}

nlohmann::ordered_json capacity_to_json(const Capacity& mu) {
  nlohmann::ordered_json j;
  j["states"] = mu.space().labels();
  nlohmann::ordered_json values = nlohmann::ordered_json::object();
  for (std::size_t s = 0; s < mu.table().size(); ++s) {
    values[format_mask_key(SubsetMask{static_cast<std::uint32_t>(s)}, mu.space().size())] =
        mu.table()[s];
  }
  j["values"] = std::move(values);
  return j;
}

}  // namespace sublin
