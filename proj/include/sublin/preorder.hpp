#pragma once

// The preorder induced by a capacity family (x ⪯ y iff every member's
// integral of x is at most that of y), its strict and symmetric parts, strict
// sections, cone classification and sampled refutation checks.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sublin/capacity.hpp"
#include "sublin/choquet.hpp"
#include "sublin/measurable.hpp"
#include "sublin/rational.hpp"

namespace sublin {

enum class Relation { StrictlyLess, Equivalent, StrictlyGreater, Incomparable };

std::string to_string(Relation r);

/// Relation of (y, x) given that of (x, y).
Relation flip(Relation r) noexcept;

/// x ⪯ y
inline bool weakly_below(Relation r) noexcept {
  return r == Relation::StrictlyLess || r == Relation::Equivalent;
}

inline constexpr double kDefaultStrictness = 1e-9;

/// Relation between the integral vectors of x and y under every member:
/// differences within `strictness` count as ties.
Relation compare(const CapacityFamily& family, const RandomVariable& x, const RandomVariable& y,
                 double strictness = kDefaultStrictness);

/// Pairwise comparison oracle for a preorder on the cone.
class PreorderOracle {
 public:
  using CompareFn = std::function<Relation(const RandomVariable&, const RandomVariable&)>;

  static PreorderOracle from_family(CapacityFamily family, double strictness = kDefaultStrictness);
  /// Complete preorder ranking points by a utility.
  static PreorderOracle from_utility(Utility u, double strictness = kDefaultStrictness);
  static PreorderOracle external(std::string provenance, CompareFn fn);

  Relation operator()(const RandomVariable& x, const RandomVariable& y) const { return fn_(x, y); }

  const std::string& provenance() const noexcept { return provenance_; }
  /// Null unless built from a capacity family.
  const CapacityFamily* family() const noexcept { return family_.get(); }

 private:
  PreorderOracle(std::string provenance, CompareFn fn, std::shared_ptr<const CapacityFamily> family)
      : provenance_(std::move(provenance)), fn_(std::move(fn)), family_(std::move(family)) {}

  std::string provenance_;
  CompareFn fn_;
  std::shared_ptr<const CapacityFamily> family_;
};

/// z ∈ L≺(anchor), i.e. z ≺ anchor.
bool in_strict_lower_section(const PreorderOracle& order, const RandomVariable& anchor,
                             const RandomVariable& z);
/// z ∈ U≺(anchor), i.e. anchor ≺ z.
bool in_strict_upper_section(const PreorderOracle& order, const RandomVariable& anchor,
                             const RandomVariable& z);

enum class ConeClass { X0, Xplus, Xminus, Undetermined };

std::string to_string(ConeClass c);

struct Classification {
  ConeClass cls = ConeClass::Undetermined;
  /// The scaling factor that decided the class, if any.
  std::optional<double> witness_t;
};

/// Witness-based: X0 if x ∼ t·x, Xplus if x ≺ t·x, Xminus if t·x ≺ x for
/// some tested t (checked in that order); Undetermined when no tested t
/// decides. Every t must exceed 1.
Classification classify_cone_point(const PreorderOracle& order, const RandomVariable& x,
                                   const std::vector<double>& t_witnesses = {2.0});

using PointPair = std::pair<RandomVariable, RandomVariable>;

struct HomotheticityResult {
  bool holds = true;
  std::size_t checked = 0;
  struct Witness {
    RandomVariable x, y;
    double t;
    Relation before, after;
  };
  std::optional<Witness> witness;
};

/// compare(x,y) and compare(t·x, t·y) carry the same tag for every sampled
/// pair and factor.
HomotheticityResult is_homothetic_sample(const PreorderOracle& order,
                                         const std::vector<PointPair>& pairs,
                                         const std::vector<double>& ts);

struct CompletenessResult {
  bool holds = true;
  std::size_t checked = 0;
  std::optional<PointPair> witness;
};

/// False with the first Incomparable pair as witness.
CompletenessResult is_complete_sample(const PreorderOracle& order,
                                      const std::vector<PointPair>& pairs);

/// Upper limit on the ray multiplier explored by searches along q·x_plus.
inline constexpr std::int64_t kDefaultRayCap = std::int64_t{1} << 20;

/// Searches dyadic q = k/2^d, coarsest level first and smallest k within a
/// level, with x ≺ q·x_plus ≺ y. Requires x ≺ y, x_plus in Xplus and
/// depth >= 1 (PreconditionError otherwise). The search bisects along the
/// ray, so it relies on q ↦ q·x_plus being increasing, which holds on X+ for
/// homothetic preorders. Every returned q is re-checked against both
/// comparisons; nullopt means nothing was found at this depth, not that no
/// such rational exists.
std::optional<PositiveRational> order_dense_witness(const PreorderOracle& order,
                                                    const RandomVariable& x_plus,
                                                    const RandomVariable& x,
                                                    const RandomVariable& y, int depth,
                                                    std::int64_t ray_cap = kDefaultRayCap);

}  // namespace sublin
