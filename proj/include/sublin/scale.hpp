#pragma once

// Decreasing scales {G_r : r ∈ Q++} given by membership oracles with exact
// rational indices: construction from a utility (G_r = {u < r}) or from a
// reference ray (G_r = L≺(r·x_plus)), recovery of a utility as the infimum
// of the indices containing a point, and sampled verifiers for each scale
// axiom.

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sublin/choquet.hpp"
#include "sublin/measurable.hpp"
#include "sublin/preorder.hpp"
#include "sublin/rational.hpp"
#include "sublin/report.hpp"

namespace sublin {

enum class ScaleProvenance { FromUtility, FromReference, External };

std::string to_string(ScaleProvenance p);

class DecreasingScale {
 public:
  using Membership = std::function<bool(const PositiveRational&, const RandomVariable&)>;

  /// Arbitrary membership oracle. `context` is the preorder it is meant to
  /// be decreasing for, when one is known.
  static DecreasingScale external(std::string name, Membership membership,
                                  std::optional<PreorderOracle> context = std::nullopt);

  /// x ∈ G_r
  bool contains(const PositiveRational& r, const RandomVariable& x) const {
    return membership_(r, x);
  }

  ScaleProvenance provenance() const noexcept { return provenance_; }
  const std::string& name() const noexcept { return name_; }
  const PreorderOracle* context() const noexcept { return context_ ? &*context_ : nullptr; }
  /// Set for FromUtility scales.
  const Utility* utility() const noexcept { return utility_ ? &*utility_ : nullptr; }
  /// Set for FromReference scales.
  const RandomVariable* reference() const noexcept { return reference_ ? &*reference_ : nullptr; }

 private:
  friend DecreasingScale scale_from_utility(Utility u);
  friend DecreasingScale scale_from_reference(PreorderOracle order, RandomVariable x_plus);

  DecreasingScale(std::string name, ScaleProvenance provenance, Membership membership)
      : name_(std::move(name)), provenance_(provenance), membership_(std::move(membership)) {}

  std::string name_;
  ScaleProvenance provenance_;
  Membership membership_;
  std::optional<PreorderOracle> context_;
  std::optional<Utility> utility_;
  std::optional<RandomVariable> reference_;
};

/// G_r = {x : u(x) < r}. The rational is rounded to the nearest double, so a
/// value u(x) within one ulp of r resolves to non-membership.
DecreasingScale scale_from_utility(Utility u);

/// G_r = {x : x ≺ r·x_plus}. Throws PreconditionError unless x_plus is
/// classified Xplus.
DecreasingScale scale_from_reference(PreorderOracle order, RandomVariable x_plus);

class CoveringViolation : public std::runtime_error {
 public:
  CoveringViolation(RandomVariable x, PositiveRational cap);
  const RandomVariable& point() const noexcept { return point_; }
  const PositiveRational& cap() const noexcept { return cap_; }

 private:
  RandomVariable point_;
  PositiveRational cap_;
};

inline constexpr int kDefaultDepth = 40;
inline const PositiveRational kDefaultBoundCap{std::int64_t{1} << 20};

/// Result of the infimum search: the true infimum lies in [lower, upper],
/// `value` is the bracket midpoint and `width` = upper - lower.
struct InfimumEstimate {
  double value = 0.0;
  double width = 0.0;
  /// Absent when the bracket reaches down to 0.
  std::optional<PositiveRational> lower;
  PositiveRational upper{1};
};

/// inf {r ∈ Q++ : x ∈ G_r}: doubling r = 1, 2, 4, ... up to bound_cap until
/// x is a member, then dyadic bisection. The final width is at most
/// bound/2^depth where bound is the first member power of two. Throws
/// CoveringViolation when no power of two up to the cap contains x.
InfimumEstimate utility_from_scale(const DecreasingScale& g, const RandomVariable& x,
                                   int depth = kDefaultDepth,
                                   const PositiveRational& bound_cap = kDefaultBoundCap);

/// x ∈ G_r ⇔ q·x ∈ G_{qr} for all sampled x and q, r drawn from `rationals`.
CheckReport verify_homogeneous(const DecreasingScale& g, const std::vector<RandomVariable>& points,
                               const std::vector<PositiveRational>& rationals);
/// Same, with scaling factors q and indices r drawn from separate lists.
CheckReport verify_homogeneous(const DecreasingScale& g, const std::vector<RandomVariable>& points,
                               const std::vector<PositiveRational>& factors,
                               const std::vector<PositiveRational>& indices);

struct SubadditiveCase {
  RandomVariable x, y;
  PositiveRational q, r;
};

/// x ∈ G_q ∧ y ∈ G_r ⇒ x+y ∈ G_{q+r}, over the cross product of pairs and
/// rational pairs.
CheckReport verify_subadditive(const DecreasingScale& g, const std::vector<PointPair>& point_pairs,
                               const std::vector<std::pair<PositiveRational, PositiveRational>>&
                                   rational_pairs);
/// Same check on explicit (x, y, q, r) cases.
CheckReport verify_subadditive(const DecreasingScale& g, const std::vector<SubadditiveCase>& cases);

/// For every sampled pair with y ⪯ x (in either orientation) and every r:
/// x ∈ G_r ⇒ y ∈ G_r. Incomparable pairs impose nothing.
CheckReport verify_decreasing(const DecreasingScale& g, const PreorderOracle& order,
                              const std::vector<PointPair>& pairs,
                              const std::vector<PositiveRational>& rationals);

/// Closed-sublevel stand-in for closure(G_r1) ⊆ G_r2 (r1 < r2):
///   FromUtility:   u(x) <= r1 ⇒ x ∈ G_r2
///   FromReference: x ⪯ r1·x_plus ⇒ x ∈ G_r2
/// External scales come back Unsupported. Throws PreconditionError unless
/// r1 < r2 for every pair.
CheckReport verify_nesting(const DecreasingScale& g, const std::vector<RandomVariable>& points,
                           const std::vector<std::pair<PositiveRational, PositiveRational>>&
                               rational_pairs);

/// Every sampled x lies in G_r for some power of two r <= bound_cap.
CheckReport verify_covering(const DecreasingScale& g, const std::vector<RandomVariable>& points,
                            const PositiveRational& bound_cap = kDefaultBoundCap);

/// Dyadic r1 < r2 with x ∈ G_r1 and y ∉ G_r2, for x ≺ y (PreconditionError
/// otherwise). Searches grids S·k/2^d for d = 0..depth, where S is a power
/// of two bracketing y; nullopt means none at this depth, not nonexistence.
std::optional<std::pair<PositiveRational, PositiveRational>> separation_witness(
    const DecreasingScale& g, const PreorderOracle& order, const RandomVariable& x,
    const RandomVariable& y, int depth = kDefaultDepth,
    const PositiveRational& bound_cap = kDefaultBoundCap);

/// |utility_from_scale(scale_from_utility(u), x) - u(x)| <= tol for every
/// point. Requires tol > bound_cap/2^depth.
CheckReport roundtrip_report(const Utility& u, const std::vector<RandomVariable>& points,
                             int depth = kDefaultDepth, double tol = 1e-6,
                             const PositiveRational& bound_cap = kDefaultBoundCap);

}  // namespace sublin
