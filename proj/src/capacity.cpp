#include "sublin/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace sublin {

std::string to_string(CapacityAxiom a) {
  switch (a) {
    case CapacityAxiom::BadSize: return "BadSize";
    case CapacityAxiom::NotFinite: return "NotFinite";
    case CapacityAxiom::EmptyNotZero: return "EmptyNotZero";
    case CapacityAxiom::FullNotOne: return "FullNotOne";
    case CapacityAxiom::MonotoneViolation: return "MonotoneViolation";
  }
  return "?";
}

std::string to_string(CheckMode m) {
  return m == CheckMode::Exhaustive ? "exhaustive" : "sampled";
}

std::optional<CapacityViolation> check_capacity_axioms(const StateSpace& space,
                                                       std::span<const double> table) {
  if (table.size() != space.subset_count()) {
    return CapacityViolation{CapacityAxiom::BadSize, {}, {},
                             "capacity table has " + std::to_string(table.size()) +
                                 " entries, expected " + std::to_string(space.subset_count())};
  }
  for (std::size_t s = 0; s < table.size(); ++s) {
    if (!std::isfinite(table[s])) {
      SubsetMask m{static_cast<std::uint32_t>(s)};
      return CapacityViolation{CapacityAxiom::NotFinite, m, m,
                               "capacity value at " + describe(m, space) + " is not finite"};
    }
  }
  if (table[0] != 0.0) {
    return CapacityViolation{CapacityAxiom::EmptyNotZero, {}, {},
                             "mu(empty) = " + format_real(table[0]) + ", expected 0"};
  }
  const std::uint32_t full = space.full_mask();
  if (table[full] != 1.0) {
    return CapacityViolation{CapacityAxiom::FullNotOne, {full}, {full},
                             "mu(Omega) = " + format_real(table[full]) + ", expected 1"};
  }
  for (std::uint32_t s = 0; s <= full; ++s) {
    for (std::size_t i = 0; i < space.size(); ++i) {
      const std::uint32_t bit = 1u << i;
      if (s & bit) continue;
      if (table[s] > table[s | bit]) {
        SubsetMask a{s}, b{s | bit};
        return CapacityViolation{CapacityAxiom::MonotoneViolation, a, b,
                                 "monotonicity fails: mu(" + describe(a, space) + ") = " +
                                     format_real(table[s]) + " > mu(" + describe(b, space) +
                                     ") = " + format_real(table[s | bit])};
      }
    }
  }
  return std::nullopt;
}

Capacity validate_capacity(StateSpace space, std::vector<double> table) {
  if (auto v = check_capacity_axioms(space, table)) throw CapacityError(std::move(*v));
  return Capacity(std::move(space), std::move(table));
}

namespace {

inline double submodular_excess(std::span<const double> t, std::uint32_t a, std::uint32_t b) {
  return (t[a | b] + t[a & b]) - (t[a] + t[b]);
}

}  // namespace

ConcavityResult is_concave(const Capacity& mu, std::uint64_t seed, std::uint64_t sample_pairs) {
  ConcavityResult res;
  const auto t = mu.table();
  const std::uint32_t full = mu.space().full_mask();
  auto record = [&](std::uint32_t a, std::uint32_t b) {
    const double e = submodular_excess(t, a, b);
    if (e > kConcavityTolerance) {
      res.concave = false;
      res.witness = std::make_pair(SubsetMask{a}, SubsetMask{b});
      res.excess = e;
      return true;
    }
    return false;
  };

  if (mu.space().size() <= kExhaustiveConcavityMaxStates) {
    res.mode = CheckMode::Exhaustive;
    // The inequality is symmetric in (A,B), so unordered pairs suffice.
    for (std::uint32_t a = 0; a <= full; ++a) {
      for (std::uint32_t b = a; b <= full; ++b) {
        ++res.pairs_checked;
        if (record(a, b)) return res;
      }
    }
    return res;
  }

  res.mode = CheckMode::Sampled;
  std::mt19937_64 gen(seed);
  for (std::uint64_t k = 0; k < sample_pairs; ++k) {
    const auto a = static_cast<std::uint32_t>(gen() & full);
    const auto b = static_cast<std::uint32_t>(gen() & full);
    ++res.pairs_checked;
    if (record(std::min(a, b), std::max(a, b))) return res;
  }
  return res;
}

namespace {

// P(S) summed in ascending state order. Rounding is monotone, so S ⊆ T
// implies P(S) <= P(T) in floating point as well.
std::vector<double> probability_table(const StateSpace& space, std::span<const double> w) {
  if (w.size() != space.size()) {
    throw DomainError("weight vector has " + std::to_string(w.size()) + " entries, expected " +
                      std::to_string(space.size()));
  }
  double total = 0.0;
  for (double v : w) {
    if (!std::isfinite(v) || v < 0.0) throw DomainError("probability weights must be nonnegative");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw DomainError("probability weights sum to " + format_real(total) + ", expected 1");
  }
  std::vector<double> table(space.subset_count());
  for (std::size_t s = 0; s < table.size(); ++s) {
    double p = 0.0;
    for (std::size_t i = 0; i < space.size(); ++i) {
      if ((s >> i) & 1u) p += w[i];
    }
    table[s] = std::min(p, 1.0);
  }
  table[space.full_mask()] = 1.0;
  return table;
}

}  // namespace

Capacity from_probability(std::span<const double> weights) {
  return from_probability(StateSpace::with_size(weights.size()), weights);
}

Capacity from_probability(const StateSpace& space, std::span<const double> weights) {
  return validate_capacity(space, probability_table(space, weights));
}

void validate_distortion(const Distortion& f) {
  if (const auto* p = std::get_if<PowerDistortion>(&f)) {
    if (!(p->exponent > 0.0) || !std::isfinite(p->exponent)) {
      throw DomainError("power distortion exponent must be positive");
    }
    return;
  }
  const auto& knots = std::get<PiecewiseLinearDistortion>(f).knots;
  if (knots.size() < 2) throw DomainError("piecewise-linear distortion needs at least two knots");
  if (knots.front() != std::make_pair(0.0, 0.0)) {
    throw DomainError("piecewise-linear distortion must start at (0,0)");
  }
  if (knots.back() != std::make_pair(1.0, 1.0)) {
    throw DomainError("piecewise-linear distortion must end at (1,1)");
  }
  for (std::size_t k = 1; k < knots.size(); ++k) {
    if (!(knots[k].first > knots[k - 1].first)) {
      throw DomainError("distortion knots must have strictly increasing abscissae");
    }
    if (knots[k].second < knots[k - 1].second) {
      throw DomainError("distortion is not monotone between knots " + std::to_string(k - 1) +
                        " and " + std::to_string(k));
    }
  }
}

double apply_distortion(const Distortion& f, double p) {
  if (const auto* pw = std::get_if<PowerDistortion>(&f)) {
    if (p <= 0.0) return 0.0;
    return std::pow(p, pw->exponent);
  }
  const auto& knots = std::get<PiecewiseLinearDistortion>(f).knots;
  if (p <= 0.0) return knots.front().second;
  if (p >= 1.0) return knots.back().second;
  auto it = std::upper_bound(knots.begin(), knots.end(), p,
                             [](double v, const auto& k) { return v < k.first; });
  const auto& [x1, y1] = *it;
  const auto& [x0, y0] = *(it - 1);
  const double y = y0 + (p - x0) * (y1 - y0) / (x1 - x0);
  // Clamp so rounding cannot break monotonicity across knots.
  return std::clamp(y, y0, y1);
}

Capacity distorted_probability(std::span<const double> weights, const Distortion& f) {
  return distorted_probability(StateSpace::with_size(weights.size()), weights, f);
}

Capacity distorted_probability(const StateSpace& space, std::span<const double> weights,
                               const Distortion& f) {
  validate_distortion(f);
  auto table = probability_table(space, weights);
  for (double& v : table) v = std::min(apply_distortion(f, v), 1.0);
  table[0] = 0.0;
  table[space.full_mask()] = 1.0;
  return validate_capacity(space, std::move(table));
}

CapacityFamily::CapacityFamily(std::vector<Capacity> members) : members_(std::move(members)) {
  if (members_.empty()) throw DomainError("capacity family must have at least one member");
  if (members_.size() > kMaxFamilySize) {
    throw DomainError("capacity family has " + std::to_string(members_.size()) +
                      " members, at most 64 allowed");
  }
  for (const auto& m : members_) {
    if (!(m.space() == members_.front().space())) {
      throw DomainError("capacity family members must share one state space");
    }
  }
}

}  // namespace sublin
