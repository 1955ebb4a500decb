#include "sublin/measurable.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>
#include <set>

namespace sublin {

StateSpace::StateSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.empty() || labels_.size() > kMaxStates) {
    throw DomainError("state space must have between 1 and 24 states, got " +
                      std::to_string(labels_.size()));
  }
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) throw DomainError("duplicate state label '" + l + "'");
  }
}

StateSpace StateSpace::with_size(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(i < 26 ? std::string(1, static_cast<char>('a' + i)) : "s" + std::to_string(i));
  }
  return StateSpace(std::move(labels));
}

std::string describe(SubsetMask s, const StateSpace& space) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (!s.contains(i)) continue;
    if (!first) out += ',';
    out += space.labels()[i];
    first = false;
  }
  return out + "}";
}

RandomVariable::RandomVariable(std::vector<double> values) : values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("random variable entries must be finite");
  }
}

bool RandomVariable::is_nonnegative() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v >= 0.0; });
}

bool RandomVariable::is_zero() const noexcept {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

double RandomVariable::max() const noexcept {
  return values_.empty() ? 0.0 : *std::max_element(values_.begin(), values_.end());
}

double RandomVariable::min() const noexcept {
  return values_.empty() ? 0.0 : *std::min_element(values_.begin(), values_.end());
}

void require_cone_point(const RandomVariable& x, std::size_t n_states) {
  if (x.size() != n_states) {
    throw DomainError("dimension mismatch: point has " + std::to_string(x.size()) +
                      " entries, state space has " + std::to_string(n_states));
  }
  if (!x.is_nonnegative()) throw DomainError("point " + to_string(x) + " is not in the cone");
}

RandomVariable scale_point(const RandomVariable& x, double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw DomainError("scaling factor must be positive and finite, got " + format_real(t));
  }
  require_cone_point(x, x.size());
  std::vector<double> out(x.values().begin(), x.values().end());
  for (double& v : out) v *= t;
  return RandomVariable(std::move(out));
}

RandomVariable add_points(const RandomVariable& x, const RandomVariable& y) {
  require_cone_point(x, x.size());
  require_cone_point(y, x.size());
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i] + y[i];
  return RandomVariable(std::move(out));
}

RandomVariable indicator(SubsetMask s, const StateSpace& space) {
  if (!s.valid_in(space)) throw DomainError("subset mask outside the state space");
  std::vector<double> out(space.size(), 0.0);
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (s.contains(i)) out[i] = 1.0;
  }
  return RandomVariable(std::move(out));
}

std::vector<RandomVariable> sample_cone(const StateSpace& space, std::size_t count,
                                        double max_value, std::uint64_t seed) {
  if (count == 0) throw DomainError("sample count must be positive");
  if (!(max_value > 0.0) || !std::isfinite(max_value)) {
    throw DomainError("max_value must be positive and finite");
  }
  std::mt19937_64 gen(seed);
  std::vector<RandomVariable> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<double> v(space.size());
    for (double& e : v) {
      // 53 random bits -> [0,1)
      const double unit = static_cast<double>(gen() >> 11) * 0x1.0p-53;
      e = unit * max_value;
    }
    out.emplace_back(std::move(v));
  }
  return out;
}

std::string format_real(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string to_string(const RandomVariable& x) {
  std::string out = "(";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ',';
    out += format_real(x[i]);
  }
  return out + ")";
}

}  // namespace sublin
