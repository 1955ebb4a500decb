#pragma once

// Capacities: normalized monotone set functions on the power set of a finite
// state space, plus concavity (submodularity) checking and constructors.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sublin/measurable.hpp"

namespace sublin {

enum class CapacityAxiom { BadSize, NotFinite, EmptyNotZero, FullNotOne, MonotoneViolation };

std::string to_string(CapacityAxiom a);

/// First axiom a candidate table violates. For MonotoneViolation the witness
/// is a pair smaller ⊂ larger with table[smaller] > table[larger].
struct CapacityViolation {
  CapacityAxiom axiom;
  SubsetMask smaller{};
  SubsetMask larger{};
  std::string message;
};

class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(CapacityViolation v)
      : std::runtime_error(v.message), violation_(std::move(v)) {}
  const CapacityViolation& violation() const noexcept { return violation_; }

 private:
  CapacityViolation violation_;
};

/// A validated capacity. Only validate_capacity and the constructors below
/// produce one, so every instance satisfies mu(empty)=0, mu(Omega)=1 and
/// monotonicity under inclusion.
class Capacity {
 public:
  const StateSpace& space() const noexcept { return space_; }
  double operator()(SubsetMask s) const { return table_[s.bits]; }
  std::span<const double> table() const noexcept { return table_; }

 private:
  friend Capacity validate_capacity(StateSpace space, std::vector<double> table);
  Capacity(StateSpace space, std::vector<double> table)
      : space_(std::move(space)), table_(std::move(table)) {}

  StateSpace space_;
  std::vector<double> table_;
};

/// Checks the capacity axioms without throwing. Monotonicity is checked on
/// single-state extensions S ⊂ S∪{i}, which is equivalent to checking all
/// inclusions and keeps the check at n·2^n.
std::optional<CapacityViolation> check_capacity_axioms(const StateSpace& space,
                                                       std::span<const double> table);

/// Returns the validated capacity or throws CapacityError.
Capacity validate_capacity(StateSpace space, std::vector<double> table);

enum class CheckMode { Exhaustive, Sampled };

std::string to_string(CheckMode m);

struct ConcavityResult {
  bool concave = true;
  CheckMode mode = CheckMode::Exhaustive;
  std::uint64_t pairs_checked = 0;
  /// First violating pair in enumeration order, if any.
  std::optional<std::pair<SubsetMask, SubsetMask>> witness;
  /// mu(A∪B) + mu(A∩B) - mu(A) - mu(B) at the witness.
  double excess = 0.0;
};

inline constexpr double kConcavityTolerance = 1e-12;
inline constexpr std::size_t kExhaustiveConcavityMaxStates = 12;
inline constexpr std::uint64_t kSampledConcavityPairs = 100'000;

/// mu(A∪B) + mu(A∩B) <= mu(A) + mu(B) + 1e-12 on every checked pair.
/// Exhaustive (unordered pairs A <= B) up to 12 states, seeded sampling of
/// `sample_pairs` pairs beyond that.
ConcavityResult is_concave(const Capacity& mu, std::uint64_t seed = 0,
                           std::uint64_t sample_pairs = kSampledConcavityPairs);

/// Additive capacity table[S] = sum of weights over S.
Capacity from_probability(std::span<const double> weights);
Capacity from_probability(const StateSpace& space, std::span<const double> weights);

struct PowerDistortion {
  double exponent;
};

/// Piecewise-linear distortion through (p, f(p)) knots; must start at (0,0),
/// end at (1,1), with strictly increasing p and nondecreasing f(p).
struct PiecewiseLinearDistortion {
  std::vector<std::pair<double, double>> knots;
};

using Distortion = std::variant<PowerDistortion, PiecewiseLinearDistortion>;

/// Throws DomainError for non-monotone or badly anchored distortions.
void validate_distortion(const Distortion& f);
double apply_distortion(const Distortion& f, double p);

/// table[S] = f(P(S)). Concavity is not assumed; run is_concave on the result.
Capacity distorted_probability(std::span<const double> weights, const Distortion& f);
Capacity distorted_probability(const StateSpace& space, std::span<const double> weights,
                               const Distortion& f);

inline constexpr std::size_t kMaxFamilySize = 64;

/// Nonempty family of capacities over one state space.
class CapacityFamily {
 public:
  explicit CapacityFamily(std::vector<Capacity> members);

  const StateSpace& space() const noexcept { return members_.front().space(); }
  std::size_t size() const noexcept { return members_.size(); }
  const std::vector<Capacity>& members() const noexcept { return members_; }
  const Capacity& operator[](std::size_t i) const { return members_[i]; }

 private:
  std::vector<Capacity> members_;
};

}  // namespace sublin
