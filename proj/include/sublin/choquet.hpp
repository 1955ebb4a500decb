#pragma once

#include <functional>
#include <memory>
#include <string>

#include "sublin/capacity.hpp"
#include "sublin/measurable.hpp"

namespace sublin {

/// Choquet integral of x with respect to mu, evaluated exactly on the finite
/// state space as a sum of layers: each gap between consecutive distinct
/// values of x contributes its width times mu of the upper-level set above
/// it. Signed x is accepted; the part of the layer sum below zero uses
/// mu({x >= t}) - 1.
double choquet_integral(const Capacity& mu, const RandomVariable& x);

/// Left-endpoint Riemann sums of t -> mu({x >= t}) over [0, max x] and
/// t -> mu({x >= t}) - 1 over [min(x,0), 0]. Only meant as a cross-check of
/// choquet_integral; the error is at most step times the number of jumps.
double choquet_riemann_oracle(const Capacity& mu, const RandomVariable& x, double step);

/// Sum over members of the Choquet integrals; x must be a cone point.
double family_utility(const CapacityFamily& family, const RandomVariable& x);

/// A real-valued function on the cone. Either the family sum above or an
/// externally supplied evaluation (for counterexamples and test doubles).
class Utility {
 public:
  using Eval = std::function<double(const RandomVariable&)>;

  static Utility from_family(CapacityFamily family);
  static Utility external(std::string name, Eval eval);

  double operator()(const RandomVariable& x) const { return eval_(x); }

  const std::string& name() const noexcept { return name_; }
  /// Null for external utilities.
  const CapacityFamily* family() const noexcept { return family_.get(); }

 private:
  Utility(std::string name, Eval eval, std::shared_ptr<const CapacityFamily> family)
      : name_(std::move(name)), eval_(std::move(eval)), family_(std::move(family)) {}

  std::string name_;
  Eval eval_;
  std::shared_ptr<const CapacityFamily> family_;
};

}  // namespace sublin
