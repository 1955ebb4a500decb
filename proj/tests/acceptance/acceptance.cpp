// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "sublin/harness.hpp"
#include "sublin/io.hpp"
#include "support/oracles.hpp"

#ifndef SUBLIN_CLI_PATH
#define SUBLIN_CLI_PATH "sublin"
#endif

using namespace sublin;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) { return format_real(v); }

Capacity mu_star() { return load_capacity_file(oracle::fixture("mu_star.json")); }
Capacity uniform_ab() { return from_probability(StateSpace(std::vector<std::string>{"a", "b"}), std::vector<double>{0.5, 0.5}); }

std::vector<CapacityFamily> concave_fixture_families() {
  std::vector<CapacityFamily> out;
  out.push_back(load_family_file(oracle::fixture("mu_star.json")));
  out.push_back(load_family_file(oracle::fixture("family_two.json")));
  out.push_back(load_family_file(oracle::fixture("sqrt_uniform3.json")));
  std::mt19937_64 gen(2026);
  for (std::size_t n : {4, 6}) {
    out.push_back(CapacityFamily({oracle::random_concave_capacity(n, gen), oracle::random_concave_capacity(n, gen)}));
  }
  return out;
}

std::vector<PointPair> zip(const std::vector<RandomVariable>& a, const std::vector<RandomVariable>& b) {
  std::vector<PointPair> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.emplace_back(a[i], b[i]);
  return out;
}

Outcome criterion1() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::pair<std::string, Capacity>> fixtures;
  for (const char* f : {"mu_star.json", "sqrt_uniform3.json", "power2.json"}) {
    fixtures.emplace_back(f, load_capacity_file(oracle::fixture(f)));
  }
  const auto two = load_family_file(oracle::fixture("family_two.json"));
  for (const auto& m : two.members()) fixtures.emplace_back("family_two", m);
  std::mt19937_64 gen(1);
  for (std::size_t n = 2; n <= 10; ++n) {
    fixtures.emplace_back("random_concave_n" + std::to_string(n), oracle::random_concave_capacity(n, gen));
    fixtures.emplace_back("random_n" + std::to_string(n), oracle::random_capacity(n, gen));
  }
  fixtures.emplace_back("sqrt_uniform10", distorted_probability(std::vector<double>(10, 0.1), PowerDistortion{0.5}));
  std::size_t pairs = 0;
  for (const auto& [name, mu] : fixtures) {
    if (check_capacity_axioms(mu.space(), mu.table())) {
      o.pass = false;
      o.detail += name + " fails axioms; ";
    }
    const auto r = is_concave(mu);
    pairs += r.pairs_checked;
    if (r.mode != CheckMode::Exhaustive) {
      o.pass = false;
      o.detail += name + " not exhaustive; ";
    }
  }
  const double elapsed = seconds_since(t0);
  if (elapsed >= 5.0) o.pass = false;

  const auto star = is_concave(mu_star());
  const auto p2 = is_concave(load_capacity_file(oracle::fixture("power2.json")));
  const bool witness_ok = p2.witness && p2.witness->first.bits == 0b01 && p2.witness->second.bits == 0b10;
  if (!star.concave || p2.concave || !witness_ok) o.pass = false;
  o.detail += std::to_string(fixtures.size()) + " fixtures, " + std::to_string(pairs) + " pairs exhaustive in " +
              fmt(std::round(elapsed * 1000) / 1000) + " s (< 5); is_concave(mu*)=" + (star.concave ? "true" : "false") +
              "; power-2 concave=" + (p2.concave ? "true" : "false") + " witness=" +
              (p2.witness ? "(" + describe(p2.witness->first, StateSpace(std::vector<std::string>{"a", "b"})) + "," +
                                describe(p2.witness->second, StateSpace(std::vector<std::string>{"a", "b"})) + ")"
                          : "none");
  return o;
}

Outcome criterion2() {
  Outcome o;
  std::mt19937_64 gen(2);
  double worst = 0.0;
  for (int c = 0; c < 5; ++c) {
    const std::size_t n = 2 + gen() % 7;  // n <= 8
    const auto mu = (c % 2) ? oracle::random_capacity(n, gen) : oracle::random_concave_capacity(n, gen);
    for (const auto& x : sample_cone(mu.space(), 200, 10.0, 100 + c)) {
      worst = std::max(worst, std::abs(choquet_integral(mu, x) - choquet_riemann_oracle(mu, x, 1e-4)));
    }
  }
  const auto mu = mu_star();
  const double a = choquet_integral(mu, {1, 0}), b = choquet_integral(mu, {2, 1});
  o.pass = worst <= 1e-3 && std::abs(a - 0.6) <= 1e-12 && std::abs(b - 1.6) <= 1e-12;
  o.detail = "max |exact - riemann(1e-4)| = " + fmt(worst) + " (<= 1e-3) over 5 capacities x 200 points; mu*(1,0)=" +
             fmt(a) + ", mu*(2,1)=" + fmt(b);
  return o;
}

Outcome criterion3() {
  Outcome o;
  double worst_sub = -1e300, worst_hom = 0.0;
  std::size_t families = 0;
  for (const auto& fam : concave_fixture_families()) {
    ++families;
    const auto xs = sample_cone(fam.space(), 1000, 10.0, 31);
    const auto ys = sample_cone(fam.space(), 1000, 10.0, 32);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double excess = family_utility(fam, add_points(xs[i], ys[i])) - family_utility(fam, xs[i]) -
                            family_utility(fam, ys[i]);
      worst_sub = std::max(worst_sub, excess);
      if (excess > 1e-9) o.pass = false;
      const double ux = family_utility(fam, xs[i]);
      for (double t : {0.5, 2.0, 3.25}) {
        const double rel = std::abs(family_utility(fam, scale_point(xs[i], t)) - t * ux) / (1.0 + std::abs(ux));
        worst_hom = std::max(worst_hom, rel);
        if (rel > 1e-9) o.pass = false;
      }
    }
  }
  o.detail = std::to_string(families) + " concave families x 1000 pairs; max u(x+y)-u(x)-u(y) = " + fmt(worst_sub) +
             " (<= 1e-9); max |u(tx)-t u(x)|/(1+|u(x)|) = " + fmt(worst_hom) + " (<= 1e-9)";
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto rats = homogeneity_rationals();
  std::size_t total_violations = 0, checks = 0;
  for (const auto& fam : concave_fixture_families()) {
    const auto g = scale_from_utility(Utility::from_family(fam));
    const auto& order = *g.context();
    const auto pts = sample_cone(fam.space(), 100, 10.0, 41);
    const auto pairs = zip(sample_cone(fam.space(), 200, 10.0, 42), sample_cone(fam.space(), 200, 10.0, 43));

    // 200 ⪯-pairs: keep drawing until 200 comparable pairs are collected.
    std::vector<PointPair> comparable;
    for (std::uint64_t s = 44; comparable.size() < 200 && s < 200; s += 2) {
      for (const auto& p : zip(sample_cone(fam.space(), 200, 10.0, s), sample_cone(fam.space(), 200, 10.0, s + 1))) {
        if (comparable.size() < 200 && order(p.first, p.second) != Relation::Incomparable) comparable.push_back(p);
      }
    }
    if (comparable.size() < 200) o.pass = false;

    // Rational indices: the 8 exact rationals scaled to cover the sampled
    // utility range, so the antecedents are actually exercised.
    std::vector<PositiveRational> indices = rats;
    for (const auto& r : rats) {
      indices.push_back(r * PositiveRational(4));
      indices.push_back(r * PositiveRational(16));
    }
    std::vector<std::pair<PositiveRational, PositiveRational>> rp;
    for (const auto& q : indices) {
      for (const auto& r : indices) rp.emplace_back(q, r);
    }
    std::vector<std::pair<PositiveRational, PositiveRational>> nest;
    for (const auto& r : indices) nest.emplace_back(r, r + PositiveRational(1, 1024));

    const CheckReport reps[] = {
        verify_homogeneous(g, pts, rats, indices), verify_subadditive(g, pairs, rp),
        verify_decreasing(g, order, comparable, indices), verify_nesting(g, pts, nest),
        verify_covering(g, pts)};
    for (const auto& r : reps) {
      ++checks;
      total_violations += r.violation_count;
      if (!r.passed()) o.pass = false;
    }
  }
  const double elapsed = seconds_since(t0);
  if (elapsed >= 10.0) o.pass = false;
  o.detail = std::to_string(checks) + " verifier runs (100 points x 8 rationals, 200 pairs, 200 comparable pairs), " +
             std::to_string(total_violations) + " violations, " + fmt(std::round(elapsed * 1000) / 1000) +
             " s (< 10)";
  return o;
}

Outcome criterion5() {
  Outcome o;
  double worst = 0.0;
  for (const auto& fam : {CapacityFamily({mu_star()}), CapacityFamily({mu_star(), uniform_ab()})}) {
    const auto u = Utility::from_family(fam);
    const auto g = scale_from_utility(u);
    for (const auto& x : sample_cone(fam.space(), 500, 10.0, 51)) {
      worst = std::max(worst, std::abs(utility_from_scale(g, x, 40).value - u(x)));
    }
  }
  o.pass = worst <= 1e-6;
  o.detail = "max |utility_from_scale - u| = " + fmt(worst) + " (<= 1e-6), 500 points, depth 40, 1- and 2-member families";
  return o;
}

Outcome criterion6() {
  Outcome o;
  const auto fam = load_family_file(oracle::fixture("family_two.json"));
  const auto u = Utility::from_family(fam);
  const auto g = scale_from_utility(u);
  const auto& order = *g.context();
  std::size_t tried = 0, verified = 0;
  for (std::uint64_t s = 60; tried < 200 && s < 400; s += 2) {
    for (const auto& [a, b] : zip(sample_cone(fam.space(), 200, 10.0, s), sample_cone(fam.space(), 200, 10.0, s + 1))) {
      if (tried == 200) break;
      auto x = a, y = b;
      const Relation rel = order(x, y);
      if (rel == Relation::StrictlyGreater) std::swap(x, y);
      if (rel != Relation::StrictlyLess && rel != Relation::StrictlyGreater) continue;
      if (u(y) - u(x) < 1e-3) continue;
      ++tried;
      const auto w = separation_witness(g, order, x, y);
      if (w && w->first < w->second && g.contains(w->first, x) && !g.contains(w->second, y)) ++verified;
    }
  }
  o.pass = tried == 200 && verified == 200;
  o.detail = std::to_string(verified) + "/" + std::to_string(tried) +
             " strict pairs (gap >= 1e-3) separated, witnesses re-checked by membership";
  return o;
}

Outcome criterion7() {
  Outcome o;
  const auto mu = mu_star();
  const auto order = PreorderOracle::from_family(CapacityFamily({mu}));
  RunConfig cfg;
  cfg.samples = 200;
  for (const RandomVariable& x_plus : {RandomVariable{1, 1}, RandomVariable{2, 2}}) {
    // Reconstruction from comparisons only, checked against the
    // permutation-formula Choquet value.
    const auto g = scale_from_reference(order, x_plus);
    const double norm = oracle::choquet_permutation(mu, x_plus);
    double worst = 0.0;
    for (const auto& x : sample_cone(mu.space(), 200, 10.0, 71)) {
      worst = std::max(worst, std::abs(utility_from_scale(g, x, 40).value - oracle::choquet_permutation(mu, x) / norm));
    }
    if (worst > 1e-6) o.pass = false;

    const auto run = run_corollary(mu, x_plus, cfg);
    std::string failed;
    for (const auto& c : run.report["checks"]) {
      const std::string name = c["check"];
      for (const char* want : {"a_homothetic", "c_order_dense", "d_x0_equivalent", "e_x0_below_xplus",
                               "f_sum_below_ray", "x_minus_empty", "reconstruction"}) {
        if (name == want && c["status"] != "pass") failed += name + " ";
      }
    }
    if (!failed.empty() || run.exit_code != 0) o.pass = false;
    o.detail += "x+=" + to_string(x_plus) + ": max |u_hat - u0/u0(x+)| = " + fmt(worst) +
                (failed.empty() ? ", (a),(c)-(f), X- empty hold" : ", failed: " + failed) + "; ";
  }
  o.detail += "200 points each, tol 1e-6";
  return o;
}

Outcome criterion8() {
  Outcome o;
  const auto p2 = load_capacity_file(oracle::fixture("power2.json"));
  const double ux = choquet_integral(p2, {1, 0}), uy = choquet_integral(p2, {0, 1}), uxy = choquet_integral(p2, {1, 1});
  const double rx = choquet_riemann_oracle(p2, {1, 0}, 1e-4), ry = choquet_riemann_oracle(p2, {0, 1}, 1e-4),
               rxy = choquet_riemann_oracle(p2, {1, 1}, 1e-4);
  const bool values = ux == 0.25 && uy == 0.25 && uxy == 1.0 && std::abs(rx - 0.25) <= 1e-3 &&
                      std::abs(ry - 0.25) <= 1e-3 && std::abs(rxy - 1.0) <= 1e-3 && ux + uy < uxy;

  RunConfig cfg;
  cfg.expected_violation = true;
  const auto run = run_theorem1(CapacityFamily({p2}), cfg);
  std::size_t found = 0;
  bool labelled = false;
  for (const auto& c : run.report["checks"]) {
    if (c["check"] == "subadditive") {
      found = c["violation_count"];
      labelled = c["mode"] == "expected-violation" && c["status"] == "pass";
    }
  }
  const auto g = scale_from_utility(Utility::from_family(CapacityFamily({p2})));
  const auto direct = verify_subadditive(g, {{{1, 0}, {0, 1}}}, {{PositiveRational(26, 100), PositiveRational(26, 100)}});
  o.pass = values && found > 0 && labelled && direct.violation_count == 1;
  o.detail = "u(1,0)+u(0,1) = " + fmt(ux + uy) + " < u(1,1) = " + fmt(uxy) + " (riemann " + fmt(rx) + ", " + fmt(ry) +
             ", " + fmt(rxy) + "); expected-violation run found " + std::to_string(found) +
             " sampled violations; q=r=13/50 case violated: " + (direct.violation_count == 1 ? "yes" : "no");
  return o;
}

Outcome criterion9() {
  Outcome o;
  const auto dir = std::filesystem::temp_directory_path();
  const auto a = dir / "sublin_acceptance_a.json";
  const auto b = dir / "sublin_acceptance_b.json";
  auto cmd = [&](const std::filesystem::path& out) {
    return std::string("\"") + SUBLIN_CLI_PATH + "\" verify-theorem1 \"" + oracle::fixture("family_two.json") +
           "\" --seed 7 --samples 200 --out \"" + out.string() + "\"";
  };
  const int ca = std::system(cmd(a).c_str());
  const int cb = std::system(cmd(b).c_str());
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  };
  const auto ra = slurp(a), rb = slurp(b);
  o.pass = ca == 0 && cb == 0 && !ra.empty() && ra == rb;
  o.detail = "two verify-theorem1 runs (seed 7): " + std::to_string(ra.size()) + " bytes, " +
             (ra == rb ? "byte-identical" : "differ") + ", exit codes " + std::to_string(ca) + "/" + std::to_string(cb);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"capacity axioms + concavity", criterion1},
      {"Choquet cross-validation", criterion2},
      {"sublinearity", criterion3},
      {"utility -> scale: five verifiers", criterion4},
      {"scale -> utility round trip", criterion5},
      {"separation witnesses", criterion6},
      {"reference-ray reconstruction", criterion7},
      {"negative control", criterion8},
      {"determinism", criterion9},
  };
  bool all = true;
  int index = 1;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << index++ << " (" << name << "): " << o.detail << "\n";
  }
  std::cout << (all ? "all criteria pass" : "some criteria fail") << "\n";
  return all ? 0 : 1;
}
