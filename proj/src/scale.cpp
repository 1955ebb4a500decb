#include "sublin/scale.hpp"

#include <algorithm>
#include <cmath>

namespace sublin {

std::string to_string(ScaleProvenance p) {
  switch (p) {
    case ScaleProvenance::FromUtility: return "FromUtility";
    case ScaleProvenance::FromReference: return "FromReference";
    case ScaleProvenance::External: return "External";
  }
  return "?";
}

DecreasingScale DecreasingScale::external(std::string name, Membership membership,
                                          std::optional<PreorderOracle> context) {
  DecreasingScale g(std::move(name), ScaleProvenance::External, std::move(membership));
  g.context_ = std::move(context);
  return g;
}

DecreasingScale scale_from_utility(Utility u) {
  auto membership = [u](const PositiveRational& r, const RandomVariable& x) {
    return u(x) < r.to_double();
  };
  DecreasingScale g("sublevel:" + u.name(), ScaleProvenance::FromUtility, membership);
  g.context_ = u.family() ? PreorderOracle::from_family(*u.family())
                          : PreorderOracle::from_utility(u);
  g.utility_ = std::move(u);
  return g;
}

DecreasingScale scale_from_reference(PreorderOracle order, RandomVariable x_plus) {
  if (classify_cone_point(order, x_plus).cls != ConeClass::Xplus) {
    throw PreconditionError("reference point " + to_string(x_plus) + " is not in X+");
  }
  auto membership = [order, x_plus](const PositiveRational& r, const RandomVariable& x) {
    return in_strict_lower_section(order, scale_point(x_plus, r.to_double()), x);
  };
  DecreasingScale g("lower_sections:" + to_string(x_plus), ScaleProvenance::FromReference,
                    membership);
  g.context_ = std::move(order);
  g.reference_ = std::move(x_plus);
  return g;
}

CoveringViolation::CoveringViolation(RandomVariable x, PositiveRational cap)
    : std::runtime_error("point " + to_string(x) + " lies in no G_r with r <= " + to_string(cap)),
      point_(std::move(x)),
      cap_(cap) {}

namespace {

void require_depth(int depth) {
  if (depth < 1 || depth > 62) throw PreconditionError("search depth must be in [1, 62]");
}

// k * 2^exponent
PositiveRational scaled_dyadic(std::int64_t k, int exponent) {
  return PositiveRational(k) * PositiveRational::power_of_two(exponent);
}

// Smallest power-of-two exponent e >= 0 with x ∈ G_{2^e} and 2^e <= cap.
std::optional<int> covering_exponent(const DecreasingScale& g, const RandomVariable& x,
                                     const PositiveRational& cap) {
  for (int e = 0; e <= 62; ++e) {
    const auto r = PositiveRational::power_of_two(e);
    if (cap < r) return std::nullopt;
    if (g.contains(r, x)) return e;
  }
  return std::nullopt;
}

nlohmann::ordered_json rationals_json(const PositiveRational& q, const PositiveRational& r) {
  return {{"q", to_string(q)}, {"r", to_string(r)}};
}

std::string membership_text(bool in) { return in ? "member" : "non-member"; }

}  // namespace

InfimumEstimate utility_from_scale(const DecreasingScale& g, const RandomVariable& x, int depth,
                                   const PositiveRational& bound_cap) {
  require_depth(depth);
  if (bound_cap < PositiveRational(1)) throw DomainError("bound cap must be at least 1");
  const auto top_exp = covering_exponent(g, x, bound_cap);
  if (!top_exp) throw CoveringViolation(x, bound_cap);
  const int e = *top_exp;

  // Bracket [lo, hi] in units of 2^(e - depth); hi is always a member, lo a
  // non-member (or 0).
  std::int64_t hi = std::int64_t{1} << depth;
  std::int64_t lo = e > 0 ? hi / 2 : 0;
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (g.contains(scaled_dyadic(mid, e - depth), x)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  InfimumEstimate est;
  est.upper = scaled_dyadic(hi, e - depth);
  if (lo > 0) est.lower = scaled_dyadic(lo, e - depth);
  est.value = std::ldexp(static_cast<double>(lo + hi), e - depth - 1);
  est.width = std::ldexp(static_cast<double>(hi - lo), e - depth);
  return est;
}

CheckReport verify_homogeneous(const DecreasingScale& g, const std::vector<RandomVariable>& points,
                               const std::vector<PositiveRational>& rationals) {
  return verify_homogeneous(g, points, rationals, rationals);
}

CheckReport verify_homogeneous(const DecreasingScale& g, const std::vector<RandomVariable>& points,
                               const std::vector<PositiveRational>& factors,
                               const std::vector<PositiveRational>& indices) {
  if (points.empty() || factors.empty() || indices.empty()) {
    throw PreconditionError("homogeneity check needs samples");
  }
  CheckReport rep;
  rep.check = "homogeneous";
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& x = points[i];
    for (const auto& q : factors) {
      const auto qx = scale_point(x, q.to_double());
      for (const auto& r : indices) {
        ++rep.samples;
        const bool lhs = g.contains(r, x);
        const bool rhs = g.contains(q * r, qx);
        if (lhs != rhs) {
          nlohmann::ordered_json in = {{"index", i}, {"x", to_json(x)}};
          in.update(rationals_json(q, r));
          rep.add_violation({std::move(in), "q*x " + membership_text(lhs) + " of G_{q*r}",
                             membership_text(rhs)});
        }
      }
    }
  }
  rep.finalize();
  return rep;
}

CheckReport verify_subadditive(const DecreasingScale& g, const std::vector<SubadditiveCase>& cases) {
  if (cases.empty()) throw PreconditionError("subadditivity check needs samples");
  CheckReport rep;
  rep.check = "subadditive";
  std::size_t antecedents = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& c = cases[i];
    ++rep.samples;
    if (!g.contains(c.q, c.x) || !g.contains(c.r, c.y)) continue;
    ++antecedents;
    const auto sum = c.q + c.r;
    if (!g.contains(sum, add_points(c.x, c.y))) {
      nlohmann::ordered_json in = {{"index", i}, {"x", to_json(c.x)}, {"y", to_json(c.y)}};
      in.update(rationals_json(c.q, c.r));
      rep.add_violation({std::move(in), "x+y member of G_" + to_string(sum), "non-member"});
    }
  }
  rep.details["antecedents_satisfied"] = antecedents;
  rep.finalize();
  return rep;
}

CheckReport verify_subadditive(const DecreasingScale& g, const std::vector<PointPair>& point_pairs,
                               const std::vector<std::pair<PositiveRational, PositiveRational>>&
                                   rational_pairs) {
  std::vector<SubadditiveCase> cases;
  cases.reserve(point_pairs.size() * rational_pairs.size());
  for (const auto& [x, y] : point_pairs) {
    for (const auto& [q, r] : rational_pairs) cases.push_back({x, y, q, r});
  }
  return verify_subadditive(g, cases);
}

CheckReport verify_decreasing(const DecreasingScale& g, const PreorderOracle& order,
                              const std::vector<PointPair>& pairs,
                              const std::vector<PositiveRational>& rationals) {
  if (pairs.empty() || rationals.empty()) throw PreconditionError("decreasing check needs samples");
  CheckReport rep;
  rep.check = "decreasing";
  std::size_t comparable = 0;
  auto check = [&](std::size_t index, const RandomVariable& lower, const RandomVariable& upper) {
    for (const auto& r : rationals) {
      ++rep.samples;
      if (g.contains(r, upper) && !g.contains(r, lower)) {
        rep.add_violation({{{"index", index},
                            {"lower", to_json(lower)},
                            {"upper", to_json(upper)},
                            {"r", to_string(r)}},
                           "lower member of G_" + to_string(r),
                           "non-member"});
      }
    }
  };
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [a, b] = pairs[i];
    const Relation rel = order(a, b);
    if (rel == Relation::Incomparable) continue;
    ++comparable;
    if (weakly_below(rel)) check(i, a, b);
    if (weakly_below(flip(rel))) check(i, b, a);
  }
  rep.details["comparable_pairs"] = comparable;
  rep.finalize();
  return rep;
}

CheckReport verify_nesting(const DecreasingScale& g, const std::vector<RandomVariable>& points,
                           const std::vector<std::pair<PositiveRational, PositiveRational>>&
                               rational_pairs) {
  CheckReport rep;
  rep.check = "nesting";
  for (const auto& [r1, r2] : rational_pairs) {
    if (!(r1 < r2)) {
      throw PreconditionError("nesting check needs r1 < r2, got " + to_string(r1) + " and " +
                              to_string(r2));
    }
  }
  if (g.provenance() == ScaleProvenance::External) {
    rep.mode = "unsupported";
    rep.status = CheckStatus::Unsupported;
    return rep;
  }
  if (points.empty() || rational_pairs.empty()) throw PreconditionError("nesting check needs samples");
  rep.surrogate_flags.push_back("closed-sublevel surrogate for closure(G_r1) ⊆ G_r2");

  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& x = points[i];
    for (const auto& [r1, r2] : rational_pairs) {
      ++rep.samples;
      bool in_closed;
      if (g.provenance() == ScaleProvenance::FromUtility) {
        in_closed = (*g.utility())(x) <= r1.to_double();
      } else {
        in_closed = weakly_below((*g.context())(x, scale_point(*g.reference(), r1.to_double())));
      }
      if (in_closed && !g.contains(r2, x)) {
        nlohmann::ordered_json in = {{"index", i}, {"x", to_json(x)}};
        in["r1"] = to_string(r1);
        in["r2"] = to_string(r2);
        rep.add_violation({std::move(in), "member of G_" + to_string(r2), "non-member"});
      }
    }
  }
  rep.finalize();
  return rep;
}

CheckReport verify_covering(const DecreasingScale& g, const std::vector<RandomVariable>& points,
                            const PositiveRational& bound_cap) {
  if (points.empty()) throw PreconditionError("covering check needs samples");
  CheckReport rep;
  rep.check = "covering";
  rep.details["bound_cap"] = to_string(bound_cap);
  for (std::size_t i = 0; i < points.size(); ++i) {
    ++rep.samples;
    if (!covering_exponent(g, points[i], bound_cap)) {
      rep.add_violation({{{"index", i}, {"x", to_json(points[i])}},
                         "member of some G_r with r <= " + to_string(bound_cap),
                         "uncovered"});
    }
  }
  rep.finalize();
  return rep;
}

std::optional<std::pair<PositiveRational, PositiveRational>> separation_witness(
    const DecreasingScale& g, const PreorderOracle& order, const RandomVariable& x,
    const RandomVariable& y, int depth, const PositiveRational& bound_cap) {
  require_depth(depth);
  if (order(x, y) != Relation::StrictlyLess) {
    throw PreconditionError("separation search needs x ≺ y");
  }
  // Scale exponent e: smallest power of two 2^e containing y, halving below
  // 1 when possible so the grid adapts to small utilities.
  const int min_exp = depth - 62;
  int e = 0;
  if (g.contains(PositiveRational(1), y)) {
    while (e > min_exp && g.contains(PositiveRational::power_of_two(e - 1), y)) --e;
  } else {
    while (true) {
      const auto next = PositiveRational::power_of_two(e + 1);
      if (e + 1 > 62 - depth || bound_cap < next) break;
      ++e;
      if (g.contains(next, y)) break;
    }
  }

  for (int level = 0; level <= depth; ++level) {
    const int unit = e - level;  // grid step 2^unit
    const std::int64_t top = std::int64_t{1} << level;
    if (!g.contains(scaled_dyadic(top, unit), x)) continue;
    std::int64_t lo = 0;
    std::int64_t hi = top;
    while (hi - lo > 1) {
      const std::int64_t mid = lo + (hi - lo) / 2;
      if (g.contains(scaled_dyadic(mid, unit), x)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    const auto r1 = scaled_dyadic(hi, unit);
    for (int j = 0; j <= depth && unit - j >= -62; ++j) {
      const auto r2 = r1 + PositiveRational::power_of_two(unit - j);
      if (!g.contains(r2, y)) return std::make_pair(r1, r2);
    }
  }
  return std::nullopt;
}

CheckReport roundtrip_report(const Utility& u, const std::vector<RandomVariable>& points, int depth,
                             double tol, const PositiveRational& bound_cap) {
  require_depth(depth);
  if (points.empty()) throw PreconditionError("round trip needs samples");
  const double resolution = std::ldexp(bound_cap.to_double(), -depth);
  if (!(tol > resolution)) {
    throw PreconditionError("round-trip tolerance " + format_real(tol) +
                            " must exceed bound_cap/2^depth = " + format_real(resolution));
  }
  const auto g = scale_from_utility(u);
  CheckReport rep;
  rep.check = "roundtrip";
  double max_error = 0.0;
  double max_width = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    ++rep.samples;
    const double expected = u(points[i]);
    try {
      const auto est = utility_from_scale(g, points[i], depth, bound_cap);
      const double err = std::abs(est.value - expected);
      max_error = std::max(max_error, err);
      max_width = std::max(max_width, est.width);
      if (err > tol) {
        rep.add_violation({{{"index", i}, {"x", to_json(points[i])}},
                           "u(x) = " + format_real(expected),
                           "reconstructed " + format_real(est.value)});
      }
    } catch (const CoveringViolation& cv) {
      rep.add_violation({{{"index", i}, {"x", to_json(points[i])}},
                         "u(x) = " + format_real(expected),
                         cv.what()});
    }
  }
  rep.details["max_error"] = max_error;
  rep.details["max_bracket_width"] = max_width;
  rep.details["tolerance"] = tol;
  rep.details["depth"] = depth;
  rep.finalize();
  return rep;
}

}  // namespace sublin
