#include "sublin/harness.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "sublin/choquet.hpp"
#include "sublin/io.hpp"

namespace sublin {

void validate(const RunConfig& cfg) {
  if (cfg.samples < 1) throw DomainError("--samples must be at least 1");
  if (cfg.depth < 1 || cfg.depth > 62) throw DomainError("--depth must be in [1, 62]");
  if (!(cfg.tol > 0.0)) throw DomainError("--tol must be positive");
  if (!(cfg.max_value > 0.0) || !std::isfinite(cfg.max_value)) {
    throw DomainError("--max-value must be positive");
  }
  if (cfg.bound_cap < PositiveRational(1)) throw DomainError("--bound-cap must be at least 1");
}

nlohmann::ordered_json to_json(const RunConfig& cfg) {
  return {{"seed", cfg.seed},
          {"samples", cfg.samples},
          {"depth", cfg.depth},
          {"tol", cfg.tol},
          {"bound_cap", to_string(cfg.bound_cap)},
          {"max_value", cfg.max_value},
          {"mode", cfg.expected_violation ? "expected-violation" : "strict"}};
}

std::vector<PositiveRational> homogeneity_rationals() {
  return {{1, 2}, {2, 1}, {3, 2}, {7, 4}, {13, 4}, {1, 3}, {5, 4}, {3, 1}};
}

ScaleSample draw_scale_sample(const StateSpace& space, const RunConfig& cfg) {
  ScaleSample s;
  s.points.push_back(RandomVariable::zero(space.size()));
  auto drawn = sample_cone(space, cfg.samples, cfg.max_value, cfg.seed);
  s.points.insert(s.points.end(), drawn.begin(), drawn.end());
  auto partners = sample_cone(space, cfg.samples, cfg.max_value, cfg.seed + 1);
  for (std::size_t i = 0; i < cfg.samples; ++i) s.pairs.emplace_back(drawn[i], partners[i]);
  return s;
}

namespace {

// Upper end of a depth-20 bisection bracket for x: an index just above the
// point's infimum, but with a gap far wider than floating roundoff.
constexpr int kTightIndexDepth = 20;

std::optional<PositiveRational> tight_index(const DecreasingScale& g, const RandomVariable& x,
                                            const RunConfig& cfg) {
  try {
    return utility_from_scale(g, x, std::min(cfg.depth, kTightIndexDepth), cfg.bound_cap).upper;
  } catch (const CoveringViolation&) {
    return std::nullopt;
  }
}

void sort_unique(std::vector<PositiveRational>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

nlohmann::ordered_json assemble(const std::string& command, const RunConfig& cfg,
                                nlohmann::ordered_json inputs,
                                const std::vector<CheckReport>& checks, int& exit_code) {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["command"] = command;
  j["config"] = to_json(cfg);
  j["inputs"] = std::move(inputs);
  auto arr = nlohmann::ordered_json::array();
  bool all = true;
  for (const auto& c : checks) {
    arr.push_back(to_json(c));
    if (c.status == CheckStatus::Fail) all = false;
  }
  j["checks"] = std::move(arr);
  j["passed"] = all;
  exit_code = all ? 0 : 1;
  return j;
}

nlohmann::ordered_json family_json(const CapacityFamily& family) {
  auto members = nlohmann::ordered_json::array();
  for (const auto& mu : family.members()) members.push_back(capacity_to_json(mu));
  return {{"states", family.space().labels()}, {"capacities", std::move(members)}};
}

}  // namespace

std::vector<CheckReport> scale_axiom_checks(const DecreasingScale& g, const PreorderOracle& order,
                                            const ScaleSample& sample, const RunConfig& cfg,
                                            bool subadditive_expected_to_fail,
                                            bool tight_indices) {
  const auto grid = homogeneity_rationals();
  std::vector<CheckReport> out;

  std::vector<std::optional<PositiveRational>> point_tight(sample.points.size());
  std::vector<std::pair<std::optional<PositiveRational>, std::optional<PositiveRational>>> pair_tight(
      sample.pairs.size());
  if (tight_indices) {
    for (std::size_t i = 0; i < sample.points.size(); ++i) point_tight[i] = tight_index(g, sample.points[i], cfg);
    for (std::size_t i = 0; i < sample.pairs.size(); ++i) {
      pair_tight[i] = {tight_index(g, sample.pairs[i].first, cfg), tight_index(g, sample.pairs[i].second, cfg)};
    }
  }

  // Nesting: consecutive grid indices, doublings, and just-above-tight pairs.
  {
    auto sorted = grid;
    sort_unique(sorted);
    std::vector<std::pair<PositiveRational, PositiveRational>> rp;
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) rp.emplace_back(sorted[i], sorted[i + 1]);
    for (const auto& r : sorted) rp.emplace_back(r, r * PositiveRational(2));
    const auto eps = PositiveRational::power_of_two(-kTightIndexDepth);
    for (std::size_t i = 0; i < point_tight.size() && i < 50; ++i) {
      if (point_tight[i]) rp.emplace_back(*point_tight[i], *point_tight[i] + eps);
    }
    out.push_back(verify_nesting(g, sample.points, rp));
  }

  out.push_back(verify_covering(g, sample.points, cfg.bound_cap));

  // Homogeneity: the grid as factors, grid plus tight indices as r.
  {
    std::vector<RandomVariable> pts(sample.points.begin(),
                                    sample.points.begin() +
                                        static_cast<std::ptrdiff_t>(std::min<std::size_t>(sample.points.size(), 100)));
    auto indices = grid;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (point_tight[i]) indices.push_back(*point_tight[i]);
    }
    sort_unique(indices);
    out.push_back(verify_homogeneous(g, pts, grid, indices));
  }

  // Subadditivity: grid pairs plus tight pairs and their multiples.
  {
    std::vector<SubadditiveCase> cases;
    for (std::size_t i = 0; i < sample.pairs.size(); ++i) {
      const auto& [x, y] = sample.pairs[i];
      for (const auto& q : grid) {
        for (const auto& r : grid) cases.push_back({x, y, q, r});
      }
      if (pair_tight[i].first && pair_tight[i].second) {
        for (const PositiveRational k : {PositiveRational(1), PositiveRational(5, 4), PositiveRational(2)}) {
          for (const PositiveRational l : {PositiveRational(1), PositiveRational(5, 4), PositiveRational(2)}) {
            cases.push_back({x, y, *pair_tight[i].first * k, *pair_tight[i].second * l});
          }
        }
      }
    }
    auto rep = verify_subadditive(g, cases);
    if (subadditive_expected_to_fail) {
      rep.mode = "expected-violation";
      if (cfg.expected_violation) rep.status = rep.violation_count > 0 ? CheckStatus::Pass : CheckStatus::Fail;
    }
    out.push_back(std::move(rep));
  }

  // Decreasing: grid plus tight indices of every pair member.
  {
    auto indices = grid;
    for (const auto& [a, b] : pair_tight) {
      if (a) indices.push_back(*a);
      if (b) indices.push_back(*b);
    }
    sort_unique(indices);
    out.push_back(verify_decreasing(g, order, sample.pairs, indices));
  }
  return out;
}

RunOutcome run_theorem1(const CapacityFamily& family, const RunConfig& cfg) {
  validate(cfg);
  std::vector<CheckReport> checks;

  bool all_concave = true;
  {
    CheckReport rep;
    rep.check = "capacity_concavity";
    auto members = nlohmann::ordered_json::array();
    std::string mode = "exhaustive";
    for (std::size_t i = 0; i < family.size(); ++i) {
      const auto res = is_concave(family[i], cfg.seed);
      ++rep.samples;
      if (res.mode == CheckMode::Sampled) mode = "sampled";
      nlohmann::ordered_json m = {{"member", i},
                                  {"concave", res.concave},
                                  {"mode", to_string(res.mode)},
                                  {"pairs_checked", res.pairs_checked}};
      if (res.witness) {
        all_concave = false;
        const auto& sp = family.space();
        m["witness"] = {describe(res.witness->first, sp), describe(res.witness->second, sp)};
        m["excess"] = res.excess;
        rep.add_violation({{{"member", i},
                            {"A", describe(res.witness->first, sp)},
                            {"B", describe(res.witness->second, sp)}},
                           "mu(A∪B) + mu(A∩B) <= mu(A) + mu(B)",
                           "excess " + format_real(res.excess)});
      }
      members.push_back(std::move(m));
    }
    rep.details["members"] = std::move(members);
    rep.mode = mode;
    rep.finalize();
    if (!all_concave && cfg.expected_violation) {
      rep.mode = "expected-violation";
      rep.status = CheckStatus::Pass;
    }
    checks.push_back(std::move(rep));
  }

  const auto u = Utility::from_family(family);
  const auto g = scale_from_utility(u);
  const auto& order = *g.context();
  const auto sample = draw_scale_sample(family.space(), cfg);

  for (auto& c : scale_axiom_checks(g, order, sample, cfg, !all_concave)) checks.push_back(std::move(c));

  {
    CheckReport rep;
    rep.check = "separation";
    std::size_t strict = 0, found = 0, unresolved = 0;
    for (std::size_t i = 0; i < sample.pairs.size(); ++i) {
      auto [x, y] = sample.pairs[i];
      const Relation rel = order(x, y);
      if (rel == Relation::StrictlyGreater) std::swap(x, y);
      if (rel != Relation::StrictlyLess && rel != Relation::StrictlyGreater) continue;
      ++strict;
      ++rep.samples;
      const double ux = u(x), uy = u(y);
      const auto w = separation_witness(g, order, x, y, cfg.depth, cfg.bound_cap);
      nlohmann::ordered_json in = {{"index", i}, {"x", to_json(x)}, {"y", to_json(y)}};
      if (w) {
        const auto& [r1, r2] = *w;
        if (r1 < r2 && g.contains(r1, x) && !g.contains(r2, y)) {
          ++found;
        } else {
          in["r1"] = to_string(r1);
          in["r2"] = to_string(r2);
          rep.add_violation({std::move(in), "r1 < r2, x ∈ G_r1, y ∉ G_r2", "witness fails re-check"});
        }
      } else if (uy - ux > std::ldexp(std::max(ux, uy), 1 - cfg.depth)) {
        rep.add_violation({std::move(in), "separating pair", "none found at depth " + std::to_string(cfg.depth)});
      } else {
        ++unresolved;
      }
    }
    rep.details["strict_pairs"] = strict;
    rep.details["witnesses_found"] = found;
    rep.details["unresolved_below_resolution"] = unresolved;
    rep.finalize();
    checks.push_back(std::move(rep));
  }

  checks.push_back(roundtrip_report(u, sample.points, cfg.depth, cfg.tol, cfg.bound_cap));

  {
    CheckReport rep;
    rep.check = "reconstruction_increasing";
    for (std::size_t i = 0; i < sample.pairs.size(); ++i) {
      const auto& [a, b] = sample.pairs[i];
      const Relation rel = order(a, b);
      if (rel == Relation::Incomparable) continue;
      ++rep.samples;
      const auto ea = utility_from_scale(g, a, cfg.depth, cfg.bound_cap);
      const auto eb = utility_from_scale(g, b, cfg.depth, cfg.bound_cap);
      const double slack = std::max(ea.width, eb.width);
      const bool ok = (!weakly_below(rel) || ea.value <= eb.value + slack) &&
                      (!weakly_below(flip(rel)) || eb.value <= ea.value + slack);
      if (!ok) {
        rep.add_violation({{{"index", i}, {"a", to_json(a)}, {"b", to_json(b)}, {"relation", to_string(rel)}},
                           "reconstruction ordered like the relation",
                           format_real(ea.value) + " vs " + format_real(eb.value)});
      }
    }
    rep.finalize();
    checks.push_back(std::move(rep));
  }

  RunOutcome out;
  out.report = assemble("verify-theorem1", cfg, {{"family", family_json(family)}}, checks, out.exit_code);
  return out;
}

RunOutcome run_corollary(const Capacity& mu, const RandomVariable& x_plus, const RunConfig& cfg) {
  validate(cfg);
  require_cone_point(x_plus, mu.space().size());
  const CapacityFamily family({mu});
  const auto order = PreorderOracle::from_family(family);
  const auto u0 = Utility::from_family(family);
  std::vector<CheckReport> checks;
  nlohmann::ordered_json inputs = {{"capacity", capacity_to_json(mu)}, {"x_plus", to_json(x_plus)}};

  const auto ref_class = classify_cone_point(order, x_plus);
  {
    CheckReport rep;
    rep.check = "reference_in_xplus";
    rep.samples = 1;
    if (ref_class.cls != ConeClass::Xplus) {
      rep.add_violation({{{"x_plus", to_json(x_plus)}}, "Xplus", to_string(ref_class.cls)});
    }
    rep.finalize();
    checks.push_back(std::move(rep));
  }
  if (ref_class.cls != ConeClass::Xplus) {
    RunOutcome out;
    out.report = assemble("verify-corollary", cfg, std::move(inputs), checks, out.exit_code);
    out.report["error"] = "reference point is not in X+";
    return out;
  }
  const double u_ref = u0(x_plus);
  const auto sample = draw_scale_sample(mu.space(), cfg);

  {
    const auto res = is_complete_sample(order, sample.pairs);
    CheckReport rep;
    rep.check = "complete";
    rep.samples = res.checked;
    if (res.witness) {
      rep.add_violation({{{"x", to_json(res.witness->first)}, {"y", to_json(res.witness->second)}},
                         "comparable", "Incomparable"});
    }
    rep.finalize();
    checks.push_back(std::move(rep));
  }

  {
    const auto res = is_homothetic_sample(order, sample.pairs, {0.5, 2.0, 3.25});
    CheckReport rep;
    rep.check = "a_homothetic";
    rep.samples = res.checked;
    if (res.witness) {
      const auto& w = *res.witness;
      rep.add_violation({{{"x", to_json(w.x)}, {"y", to_json(w.y)}, {"t", w.t}},
                         to_string(w.before), to_string(w.after)});
    }
    rep.finalize();
    checks.push_back(std::move(rep));
  }

  {
    CheckReport rep;
    rep.check = "b_continuous";
    rep.mode = "by-construction";
    rep.surrogate_flags.push_back("not sampled: the Choquet-induced preorder is continuous");
    rep.finalize();
    checks.push_back(std::move(rep));
  }

  std::vector<Classification> classes;
  for (const auto& x : sample.points) classes.push_back(classify_cone_point(order, x));

  {
    CheckReport rep;
    rep.check = "x_minus_empty";
    std::size_t counts[4] = {0, 0, 0, 0};
    for (std::size_t i = 0; i < classes.size(); ++i) {
      ++rep.samples;
      ++counts[static_cast<int>(classes[i].cls)];
      if (classes[i].cls == ConeClass::Xminus) {
        rep.add_violation({{{"index", i}, {"x", to_json(sample.points[i])}}, "not Xminus", "Xminus"});
      }
    }
    rep.details["X0"] = counts[0];
    rep.details["Xplus"] = counts[1];
    rep.details["Xminus"] = counts[2];
    rep.details["Undetermined"] = counts[3];
    rep.finalize();
    checks.push_back(std::move(rep));
  }

  {
    CheckReport rep;
    rep.check = "c_order_dense";
    std::size_t found = 0, unresolved = 0;
    const double resolution = std::ldexp(u_ref, 1 - cfg.depth) + 2 * kDefaultStrictness;
    for (std::size_t i = 0; i < sample.pairs.size(); ++i) {
      auto [x, y] = sample.pairs[i];
      const Relation rel = order(x, y);
      if (rel == Relation::StrictlyGreater) std::swap(x, y);
      if (rel != Relation::StrictlyLess && rel != Relation::StrictlyGreater) continue;
      if (classify_cone_point(order, x).cls != ConeClass::Xplus ||
          classify_cone_point(order, y).cls != ConeClass::Xplus) {
        continue;
      }
      ++rep.samples;
      if (order_dense_witness(order, x_plus, x, y, cfg.depth)) {
        ++found;
      } else if (u0(y) - u0(x) > resolution) {
        rep.add_violation({{{"index", i}, {"x", to_json(x)}, {"y", to_json(y)}},
                           "q with x ≺ q·x_plus ≺ y",
                           "none found at depth " + std::to_string(cfg.depth)});
      } else {
        ++unresolved;
      }
    }
    rep.details["witnesses_found"] = found;
    rep.details["unresolved_below_resolution"] = unresolved;
    rep.finalize();
    checks.push_back(std::move(rep));
  }

  // X0 candidates: the zero vector, scaled indicators, and sampled X0 points.
  std::vector<RandomVariable> x0;
  std::vector<RandomVariable> xplus;
  {
    std::vector<RandomVariable> candidates{RandomVariable::zero(mu.space().size())};
    const std::uint32_t limit = std::min<std::uint32_t>(mu.space().full_mask(), 1023);
    for (std::uint32_t s = 1; s <= limit; ++s) {
      candidates.push_back(scale_point(indicator(SubsetMask{s}, mu.space()), cfg.max_value / 2));
    }
    for (const auto& c : candidates) {
      if (x0.size() < 50 && classify_cone_point(order, c).cls == ConeClass::X0) x0.push_back(c);
    }
    for (std::size_t i = 0; i < classes.size(); ++i) {
      if (classes[i].cls == ConeClass::X0 && x0.size() < 50) x0.push_back(sample.points[i]);
      if (classes[i].cls == ConeClass::Xplus && xplus.size() < 100) xplus.push_back(sample.points[i]);
    }
    xplus.push_back(x_plus);
  }

  {
    CheckReport rep;
    rep.check = "d_x0_equivalent";
    for (std::size_t i = 0; i < x0.size(); ++i) {
      for (std::size_t j = i + 1; j < x0.size(); ++j) {
        ++rep.samples;
        const Relation rel = order(x0[i], x0[j]);
        if (rel != Relation::Equivalent) {
          rep.add_violation({{{"x", to_json(x0[i])}, {"y", to_json(x0[j])}}, "Equivalent", to_string(rel)});
        }
      }
    }
    rep.details["x0_points"] = x0.size();
    rep.finalize();
    checks.push_back(std::move(rep));
  }

  {
    CheckReport rep;
    rep.check = "e_x0_below_xplus";
    for (const auto& a : x0) {
      for (const auto& b : xplus) {
        ++rep.samples;
        const Relation rel = order(a, b);
        if (rel != Relation::StrictlyLess) {
          rep.add_violation({{{"x0", to_json(a)}, {"x_plus", to_json(b)}}, "StrictlyLess", to_string(rel)});
        }
      }
    }
    rep.finalize();
    checks.push_back(std::move(rep));
  }

  const auto g = scale_from_reference(order, x_plus);

  {
    // x ≺ q·x_plus ∧ y ≺ r·x_plus ⇒ x+y ≺ (q+r)·x_plus is subadditivity of
    // the lower-section scale.
    const auto grid = homogeneity_rationals();
    std::vector<SubadditiveCase> cases;
    for (const auto& [x, y] : sample.pairs) {
      for (const auto& q : grid) {
        for (const auto& r : grid) cases.push_back({x, y, q, r});
      }
      auto tq = tight_index(g, x, cfg);
      auto tr = tight_index(g, y, cfg);
      if (tq && tr) cases.push_back({x, y, *tq, *tr});
    }
    auto rep = verify_subadditive(g, cases);
    rep.check = "f_sum_below_ray";
    checks.push_back(std::move(rep));
  }

  {
    CheckReport rep;
    rep.check = "reconstruction";
    double max_error = 0.0;
    for (std::size_t i = 0; i < sample.points.size(); ++i) {
      ++rep.samples;
      const double expected = u0(sample.points[i]) / u_ref;
      try {
        const auto est = utility_from_scale(g, sample.points[i], cfg.depth, cfg.bound_cap);
        const double err = std::abs(est.value - expected);
        max_error = std::max(max_error, err);
        if (err > cfg.tol) {
          rep.add_violation({{{"index", i}, {"x", to_json(sample.points[i])}},
                             "u(x)/u(x_plus) = " + format_real(expected),
                             "reconstructed " + format_real(est.value)});
        }
      } catch (const CoveringViolation& cv) {
        rep.add_violation({{{"index", i}, {"x", to_json(sample.points[i])}},
                           "u(x)/u(x_plus) = " + format_real(expected), cv.what()});
      }
    }
    rep.details["max_error"] = max_error;
    rep.details["tolerance"] = cfg.tol;
    rep.details["reference_utility"] = u_ref;
    rep.finalize();
    checks.push_back(std::move(rep));
  }

  // Grid indices only: the absolute strictness margin is not scale
  // invariant, so indices within a margin of a point's infimum would flag
  // the deadband rather than the scale.
  for (auto& c : scale_axiom_checks(g, order, sample, cfg, false, false)) {
    c.check = "reference_scale." + c.check;
    c.surrogate_flags.push_back("grid indices only");
    checks.push_back(std::move(c));
  }

  RunOutcome out;
  out.report = assemble("verify-corollary", cfg, std::move(inputs), checks, out.exit_code);
  return out;
}

DecreasingScale build_scale(const CapacityFamily& family, const std::optional<RandomVariable>& x_plus) {
  if (!x_plus) return scale_from_utility(Utility::from_family(family));
  require_cone_point(*x_plus, family.space().size());
  return scale_from_reference(PreorderOracle::from_family(family), *x_plus);
}

namespace {

nlohmann::ordered_json scale_inputs(const CapacityFamily& family, const std::optional<RandomVariable>& x_plus) {
  nlohmann::ordered_json in = {{"family", family_json(family)}};
  if (x_plus) in["x_plus"] = to_json(*x_plus);
  return in;
}

}  // namespace

RunOutcome run_build_scale(const CapacityFamily& family, const std::optional<RandomVariable>& x_plus,
                           const std::vector<RandomVariable>& points, const RunConfig& cfg) {
  validate(cfg);
  const auto g = build_scale(family, x_plus);
  auto rows = nlohmann::ordered_json::array();
  bool covered = true;
  for (const auto& x : points) {
    require_cone_point(x, family.space().size());
    nlohmann::ordered_json row = {{"x", to_json(x)}};
    try {
      const auto est = utility_from_scale(g, x, cfg.depth, cfg.bound_cap);
      row["infimum"] = est.value;
      row["width"] = est.width;
      row["lower"] = est.lower ? nlohmann::ordered_json(to_string(*est.lower)) : nlohmann::ordered_json("0");
      row["upper"] = to_string(est.upper);
    } catch (const CoveringViolation&) {
      covered = false;
      row["uncovered_below"] = to_string(cfg.bound_cap);
    }
    rows.push_back(std::move(row));
  }
  RunOutcome out;
  out.report["schema"] = kReportSchema;
  out.report["command"] = "build-scale";
  out.report["config"] = to_json(cfg);
  out.report["inputs"] = scale_inputs(family, x_plus);
  out.report["scale"] = {{"name", g.name()}, {"provenance", to_string(g.provenance())}};
  out.report["points"] = std::move(rows);
  out.report["passed"] = covered;
  out.exit_code = covered ? 0 : 1;
  return out;
}

RunOutcome run_verify_scale(const CapacityFamily& family, const std::optional<RandomVariable>& x_plus,
                            const RunConfig& cfg) {
  validate(cfg);
  RunOutcome out;
  std::vector<CheckReport> checks;
  if (x_plus) {
    require_cone_point(*x_plus, family.space().size());
    const auto cls = classify_cone_point(PreorderOracle::from_family(family), *x_plus);
    if (cls.cls != ConeClass::Xplus) {
      CheckReport rep;
      rep.check = "reference_in_xplus";
      rep.samples = 1;
      rep.add_violation({{{"x_plus", to_json(*x_plus)}}, "Xplus", to_string(cls.cls)});
      rep.finalize();
      checks.push_back(std::move(rep));
      out.report = assemble("verify-scale", cfg, scale_inputs(family, x_plus), checks, out.exit_code);
      out.report["error"] = "reference point is not in X+";
      return out;
    }
  }
  const auto g = build_scale(family, x_plus);
  const auto sample = draw_scale_sample(family.space(), cfg);
  for (auto& c : scale_axiom_checks(g, *g.context(), sample, cfg, false, !x_plus)) {
    if (x_plus) c.surrogate_flags.push_back("grid indices only");
    checks.push_back(std::move(c));
  }
  out.report = assemble("verify-scale", cfg, scale_inputs(family, x_plus), checks, out.exit_code);
  out.report["scale"] = {{"name", g.name()}, {"provenance", to_string(g.provenance())}};
  return out;
}

}  // namespace sublin
