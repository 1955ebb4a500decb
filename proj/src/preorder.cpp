#include "sublin/preorder.hpp"

#include <cmath>

namespace sublin {

std::string to_string(Relation r) {
  switch (r) {
    case Relation::StrictlyLess: return "StrictlyLess";
    case Relation::Equivalent: return "Equivalent";
    case Relation::StrictlyGreater: return "StrictlyGreater";
    case Relation::Incomparable: return "Incomparable";
  }
  return "?";
}

Relation flip(Relation r) noexcept {
  switch (r) {
    case Relation::StrictlyLess: return Relation::StrictlyGreater;
    case Relation::StrictlyGreater: return Relation::StrictlyLess;
    default: return r;
  }
}

std::string to_string(ConeClass c) {
  switch (c) {
    case ConeClass::X0: return "X0";
    case ConeClass::Xplus: return "Xplus";
    case ConeClass::Xminus: return "Xminus";
    case ConeClass::Undetermined: return "Undetermined";
  }
  return "?";
}

Relation compare(const CapacityFamily& family, const RandomVariable& x, const RandomVariable& y,
                 double strictness) {
  require_cone_point(x, family.space().size());
  require_cone_point(y, family.space().size());
  bool x_below = true;  // x ⪯ y under every member
  bool y_below = true;
  for (const auto& mu : family.members()) {
    const double ix = choquet_integral(mu, x);
    const double iy = choquet_integral(mu, y);
    if (ix > iy + strictness) x_below = false;
    if (iy > ix + strictness) y_below = false;
  }
  if (x_below && y_below) return Relation::Equivalent;
  if (x_below) return Relation::StrictlyLess;
  if (y_below) return Relation::StrictlyGreater;
  return Relation::Incomparable;
}

PreorderOracle PreorderOracle::from_family(CapacityFamily family, double strictness) {
  auto shared = std::make_shared<const CapacityFamily>(std::move(family));
  CompareFn fn = [shared, strictness](const RandomVariable& x, const RandomVariable& y) {
    return compare(*shared, x, y, strictness);
  };
  auto name = "capacity_family[" + std::to_string(shared->size()) + "]";
  return PreorderOracle(std::move(name), std::move(fn), std::move(shared));
}

PreorderOracle PreorderOracle::from_utility(Utility u, double strictness) {
  std::string name = "utility:" + u.name();
  CompareFn fn = [u = std::move(u), strictness](const RandomVariable& x, const RandomVariable& y) {
    const double ux = u(x);
    const double uy = u(y);
    if (std::abs(ux - uy) <= strictness) return Relation::Equivalent;
    return ux < uy ? Relation::StrictlyLess : Relation::StrictlyGreater;
  };
  return PreorderOracle(std::move(name), std::move(fn), nullptr);
}

PreorderOracle PreorderOracle::external(std::string provenance, CompareFn fn) {
  return PreorderOracle(std::move(provenance), std::move(fn), nullptr);
}

bool in_strict_lower_section(const PreorderOracle& order, const RandomVariable& anchor,
                             const RandomVariable& z) {
  return order(z, anchor) == Relation::StrictlyLess;
}

bool in_strict_upper_section(const PreorderOracle& order, const RandomVariable& anchor,
                             const RandomVariable& z) {
  return in_strict_lower_section(order, z, anchor);
}

Classification classify_cone_point(const PreorderOracle& order, const RandomVariable& x,
                                   const std::vector<double>& t_witnesses) {
  if (t_witnesses.empty()) throw PreconditionError("classification needs at least one witness t");
  for (double t : t_witnesses) {
    if (!(t > 1.0) || !std::isfinite(t)) {
      throw PreconditionError("classification witnesses must exceed 1, got " + format_real(t));
    }
  }
  std::vector<Relation> rel;
  rel.reserve(t_witnesses.size());
  for (double t : t_witnesses) rel.push_back(order(x, scale_point(x, t)));

  for (std::size_t i = 0; i < rel.size(); ++i) {
    if (rel[i] == Relation::Equivalent) return {ConeClass::X0, t_witnesses[i]};
  }
  for (std::size_t i = 0; i < rel.size(); ++i) {
    if (rel[i] == Relation::StrictlyLess) return {ConeClass::Xplus, t_witnesses[i]};
  }
  for (std::size_t i = 0; i < rel.size(); ++i) {
    if (rel[i] == Relation::StrictlyGreater) return {ConeClass::Xminus, t_witnesses[i]};
  }
  return {ConeClass::Undetermined, std::nullopt};
}

HomotheticityResult is_homothetic_sample(const PreorderOracle& order,
                                         const std::vector<PointPair>& pairs,
                                         const std::vector<double>& ts) {
  if (pairs.empty() || ts.empty()) throw PreconditionError("homotheticity check needs samples");
  HomotheticityResult res;
  for (const auto& [x, y] : pairs) {
    const Relation before = order(x, y);
    for (double t : ts) {
      ++res.checked;
      const Relation after = order(scale_point(x, t), scale_point(y, t));
      if (after != before) {
        res.holds = false;
        res.witness = HomotheticityResult::Witness{x, y, t, before, after};
        return res;
      }
    }
  }
  return res;
}

CompletenessResult is_complete_sample(const PreorderOracle& order,
                                      const std::vector<PointPair>& pairs) {
  if (pairs.empty()) throw PreconditionError("completeness check needs samples");
  CompletenessResult res;
  for (const auto& p : pairs) {
    ++res.checked;
    if (order(p.first, p.second) == Relation::Incomparable) {
      res.holds = false;
      res.witness = p;
      return res;
    }
  }
  return res;
}

std::optional<PositiveRational> order_dense_witness(const PreorderOracle& order,
                                                    const RandomVariable& x_plus,
                                                    const RandomVariable& x,
                                                    const RandomVariable& y, int depth,
                                                    std::int64_t ray_cap) {
  if (depth < 1) throw PreconditionError("order-density search depth must be >= 1");
  if (order(x, y) != Relation::StrictlyLess) {
    throw PreconditionError("order-density search needs x ≺ y");
  }
  if (classify_cone_point(order, x_plus).cls != ConeClass::Xplus) {
    throw PreconditionError("reference point " + to_string(x_plus) + " is not in X+");
  }

  auto above_x = [&](const PositiveRational& q) {
    return order(x, scale_point(x_plus, q.to_double())) == Relation::StrictlyLess;
  };

  // Smallest power of two on the ray strictly above x.
  std::int64_t top = 1;
  while (!above_x(PositiveRational(top))) {
    if (top >= ray_cap) return std::nullopt;
    top *= 2;
  }
  int top_log = 0;
  while ((std::int64_t{1} << top_log) < top) ++top_log;
  if (depth + top_log > 62) throw PreconditionError("order-density search depth too large");

  for (int level = 0; level <= depth; ++level) {
    // Smallest k in [1, top*2^level] with k/2^level above x.
    std::int64_t lo = 0;
    std::int64_t hi = top << level;
    while (hi - lo > 1) {
      const std::int64_t mid = lo + (hi - lo) / 2;
      if (above_x(PositiveRational::dyadic(mid, level))) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    const auto q = PositiveRational::dyadic(hi, level);
    const auto point = scale_point(x_plus, q.to_double());
    if (order(x, point) == Relation::StrictlyLess && order(point, y) == Relation::StrictlyLess) {
      return q;
    }
  }
  return std::nullopt;
}

}  // namespace sublin
