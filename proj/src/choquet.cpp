#include "sublin/choquet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sublin {

namespace {

void require_dimension(const Capacity& mu, const RandomVariable& x) {
  if (x.size() != mu.space().size()) {
    throw DomainError("dimension mismatch: point has " + std::to_string(x.size()) +
                      " entries, capacity is on " + std::to_string(mu.space().size()) + " states");
  }
}

}  // namespace

double choquet_integral(const Capacity& mu, const RandomVariable& x) {
  require_dimension(mu, x);
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] > x[b]; });

  // Walk the distinct values from the top. Between the level `below` and the
  // current value v, the upper-level set {x >= t} is `upper`.
  double positive = 0.0;
  double negative = 0.0;
  std::uint32_t upper = 0;
  std::size_t k = 0;
  while (k < n) {
    const double v = x[order[k]];
    while (k < n && x[order[k]] == v) upper |= 1u << order[k++];
    if (k == n) break;  // below the minimum the level set is Omega
    const double below = x[order[k]];
    const double level = mu(SubsetMask{upper});
    // Split (below, v] at zero.
    if (v > 0.0) positive += (v - std::max(below, 0.0)) * level;
    if (below < 0.0) negative += (std::min(v, 0.0) - below) * (level - 1.0);
  }
  // Interval (-inf, min x] has level set Omega: contributes mu(Omega) = 1 on
  // [0, min x] when min x > 0 and 0 to the negative part.
  const double lowest = x[order[n - 1]];
  if (lowest > 0.0) positive += lowest * mu(SubsetMask{mu.space().full_mask()});
  // Interval (max x, 0] has the empty level set when max x < 0.
  const double highest = x[order[0]];
  if (highest < 0.0) negative += highest;
  return positive + negative;
}

double choquet_riemann_oracle(const Capacity& mu, const RandomVariable& x, double step) {
  require_dimension(mu, x);
  if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("Riemann step must be positive");

  auto level_set = [&](double t) {
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] >= t) s |= 1u << i;
    }
    return SubsetMask{s};
  };

  double sum = 0.0;
  const double top = std::max(x.max(), 0.0);
  const auto n_pos = static_cast<std::uint64_t>(std::ceil(top / step));
  for (std::uint64_t k = 0; k < n_pos; ++k) {
    const double t = static_cast<double>(k) * step;
    const double width = std::min(step, top - t);
    if (width <= 0.0) break;
    sum += mu(level_set(t)) * width;
  }

  const double bottom = std::min(x.min(), 0.0);
  const auto n_neg = static_cast<std::uint64_t>(std::ceil(-bottom / step));
  for (std::uint64_t k = 0; k < n_neg; ++k) {
    const double t = bottom + static_cast<double>(k) * step;
    const double width = std::min(step, -t);
    if (width <= 0.0) break;
    sum += (mu(level_set(t)) - 1.0) * width;
  }
  return sum;
}

double family_utility(const CapacityFamily& family, const RandomVariable& x) {
  require_cone_point(x, family.space().size());
  double u = 0.0;
  for (const auto& mu : family.members()) u += choquet_integral(mu, x);
  return u;
}

Utility Utility::from_family(CapacityFamily family) {
  auto shared = std::make_shared<const CapacityFamily>(std::move(family));
  std::string name = "choquet_sum[" + std::to_string(shared->size()) + "]";
  Eval eval = [shared](const RandomVariable& x) { return family_utility(*shared, x); };
  return Utility(std::move(name), std::move(eval), std::move(shared));
}

Utility Utility::external(std::string name, Eval eval) {
  return Utility(std::move(name), std::move(eval), nullptr);
}

}  // namespace sublin
