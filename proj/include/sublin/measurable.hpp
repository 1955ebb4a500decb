#pragma once

// Finite state spaces, subsets as bitmasks, and nonnegative random variables
// living in the cone of the nonnegative orthant.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace sublin {

/// Raised for arguments outside an operation's domain (bad scaling factor,
/// dimension mismatch, negative entries in cone arithmetic, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a documented precondition of a search or verifier fails.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline constexpr std::size_t kMaxStates = 24;

/// Finite state space Omega; the sigma-algebra is always the full power set.
class StateSpace {
 public:
  /// Labels must be distinct and 1..24 in number.
  explicit StateSpace(std::vector<std::string> labels);

  /// States labelled "a", "b", ... (then "s26", ... past the alphabet).
  static StateSpace with_size(std::size_t n);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::uint32_t full_mask() const noexcept {
    return static_cast<std::uint32_t>((std::uint64_t{1} << size()) - 1);
  }
  std::size_t subset_count() const noexcept { return std::size_t{1} << size(); }

  bool operator==(const StateSpace&) const = default;

 private:
  std::vector<std::string> labels_;
};

/// Subset of a state space, one bit per state (bit i <=> state i).
struct SubsetMask {
  std::uint32_t bits = 0;

  constexpr bool contains(std::size_t state) const noexcept {
    return (bits >> state) & 1u;
  }
  constexpr bool subset_of(SubsetMask other) const noexcept {
    return (bits & ~other.bits) == 0;
  }
  constexpr SubsetMask operator|(SubsetMask o) const noexcept { return {bits | o.bits}; }
  constexpr SubsetMask operator&(SubsetMask o) const noexcept { return {bits & o.bits}; }
  constexpr bool operator==(const SubsetMask&) const = default;

  bool valid_in(const StateSpace& space) const noexcept {
    return bits <= space.full_mask();
  }
};

/// Human-readable form "{a,b}" using the space's labels.
std::string describe(SubsetMask s, const StateSpace& space);

/// Real random variable on a finite state space: one payoff per state.
/// Entries must be finite; cone operations additionally require them to be
/// nonnegative.
class RandomVariable {
 public:
  RandomVariable() = default;
  explicit RandomVariable(std::vector<double> values);
  RandomVariable(std::initializer_list<double> values)
      : RandomVariable(std::vector<double>(values)) {}

  static RandomVariable zero(std::size_t n) { return RandomVariable(std::vector<double>(n, 0.0)); }

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

  bool is_nonnegative() const noexcept;
  bool is_zero() const noexcept;
  double max() const noexcept;
  double min() const noexcept;

  bool operator==(const RandomVariable&) const = default;

 private:
  std::vector<double> values_;
};

/// Throws DomainError unless x has one entry per state and lies in the cone.
void require_cone_point(const RandomVariable& x, std::size_t n_states);

/// Entrywise t*x; t must be positive and x nonnegative.
RandomVariable scale_point(const RandomVariable& x, double t);

/// Entrywise x+y; both must be cone points of the same dimension.
RandomVariable add_points(const RandomVariable& x, const RandomVariable& y);

/// 1 on the states of s, 0 elsewhere.
RandomVariable indicator(SubsetMask s, const StateSpace& space);

/// Deterministic seeded cone samples with entries in [0, max_value].
/// A pure function of its arguments: the generator is mt19937_64 and the
/// double conversion is done by hand, so the sequence does not depend on
/// the standard library's distribution implementations.
std::vector<RandomVariable> sample_cone(const StateSpace& space, std::size_t count,
                                        double max_value, std::uint64_t seed);

/// Shortest round-trip decimal form of a double.
std::string format_real(double v);

/// "(1,0.5)"
std::string to_string(const RandomVariable& x);

}  // namespace sublin
