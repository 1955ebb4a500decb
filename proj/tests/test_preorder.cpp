#include <doctest.h>

#include <random>

#include "sublin/choquet.hpp"
#include "sublin/preorder.hpp"
#include "support/oracles.hpp"

using namespace sublin;

namespace {

const StateSpace kAB({"a", "b"});
Capacity mu_star() { return validate_capacity(kAB, {0.0, 0.6, 0.5, 1.0}); }
Capacity point_mass_b() { return from_probability(kAB, std::vector<double>{0.0, 1.0}); }

// Ranks 2-vectors by x1 + x2^2: complete but not homothetic.
PreorderOracle square_oracle() {
  return PreorderOracle::from_utility(
      Utility::external("x1+x2^2", [](const RandomVariable& x) { return x[0] + x[1] * x[1]; }));
}

std::vector<CapacityFamily> seeded_families(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<CapacityFamily> out;
  for (int i = 0; i < 12; ++i) {
    const std::size_t n = 2 + gen() % 4;
    std::vector<Capacity> members;
    const std::size_t k = 1 + gen() % 3;
    for (std::size_t j = 0; j < k; ++j) members.push_back(oracle::random_concave_capacity(n, gen));
    out.emplace_back(std::move(members));
  }
  return out;
}

}  // namespace

TEST_CASE("compare examples") {
  const CapacityFamily one({mu_star()});
  CHECK(compare(one, {1, 0}, {2, 1}) == Relation::StrictlyLess);
  CHECK(compare(one, {2, 1}, {1, 0}) == Relation::StrictlyGreater);
  CHECK(compare(one, {1, 0}, {1, 0}) == Relation::Equivalent);
  const CapacityFamily two({mu_star(), point_mass_b()});
  CHECK(compare(two, {1, 0}, {0, 1}) == Relation::Incomparable);
  CHECK(compare(one, {1, 0}, {0.6, 0.6}) == Relation::Equivalent);
  CHECK(compare(one, {1, 0}, {0.6 + 2e-9, 0.6 + 2e-9}) == Relation::StrictlyLess);
  CHECK(compare(one, {1, 0}, {0.6 + 5e-10, 0.6 + 5e-10}) == Relation::Equivalent);
  CHECK(compare(one, {1, 0}, {0.6 + 5e-10, 0.6 + 5e-10}, 1e-12) == Relation::StrictlyLess);
  CHECK_THROWS_AS(compare(one, {1, 0, 0}, {1, 0}), DomainError);
  CHECK_THROWS_AS(compare(one, {-1, 0}, {1, 0}), DomainError);
  CHECK(flip(Relation::StrictlyLess) == Relation::StrictlyGreater);
  CHECK(flip(Relation::Incomparable) == Relation::Incomparable);
}

TEST_CASE("strict sections") {
  const auto order = PreorderOracle::from_family(CapacityFamily({mu_star()}));
  CHECK(in_strict_lower_section(order, {2, 1}, {1, 0}));
  CHECK_FALSE(in_strict_lower_section(order, {1, 0}, {1, 0}));
  CHECK_FALSE(in_strict_lower_section(order, {1, 0}, {2, 1}));
  CHECK(in_strict_upper_section(order, {1, 0}, {2, 1}));
  CHECK_FALSE(in_strict_upper_section(order, {2, 1}, {1, 0}));
}

TEST_CASE("property: the induced relation is a preorder") {
  for (const auto& family : seeded_families(40)) {
    const auto order = PreorderOracle::from_family(family);
    const auto pts = sample_cone(family.space(), 25, 10.0, 41);
    for (const auto& x : pts) CHECK(order(x, x) == Relation::Equivalent);
    for (const auto& x : pts) {
      for (const auto& y : pts) {
        const Relation xy = order(x, y);
        const Relation yx = order(y, x);
        CHECK(yx == flip(xy));
        CHECK_FALSE((xy == Relation::StrictlyLess && yx == Relation::StrictlyLess));
        if (family.size() == 1) {
          CHECK(xy != Relation::Incomparable);
          const double ux = family_utility(family, x), uy = family_utility(family, y);
          if (ux + 1e-9 < uy) CHECK(xy == Relation::StrictlyLess);
          if (uy + 1e-9 < ux) CHECK(xy == Relation::StrictlyGreater);
        }
      }
    }
    // Transitivity of strict preference on sampled triples. The deadband
    // makes ∼ non-transitive in general, so only ≺ chains are composed.
    for (const auto& x : pts) {
      for (const auto& y : pts) {
        if (order(x, y) != Relation::StrictlyLess) continue;
        for (const auto& z : pts) {
          if (order(y, z) == Relation::StrictlyLess) CHECK(order(x, z) == Relation::StrictlyLess);
        }
      }
    }
  }
}

TEST_CASE("classify_cone_point") {
  const auto order = PreorderOracle::from_family(CapacityFamily({mu_star()}));
  const auto c = classify_cone_point(order, {1, 0});
  CHECK(c.cls == ConeClass::Xplus);
  CHECK(c.witness_t == 2.0);
  CHECK(classify_cone_point(order, {0, 0}).cls == ConeClass::X0);
  CHECK_THROWS_AS(classify_cone_point(order, {1, 0}, {1.0}), PreconditionError);
  CHECK_THROWS_AS(classify_cone_point(order, {1, 0}, {0.5}), PreconditionError);
  CHECK_THROWS_AS(classify_cone_point(order, {1, 0}, {}), PreconditionError);

  // A preorder ranking by 1/(1+|x|) puts every nonzero point in X-.
  const auto reversed = PreorderOracle::from_utility(
      Utility::external("decreasing", [](const RandomVariable& x) { return 1.0 / (1.0 + x[0] + x[1]); }));
  CHECK(classify_cone_point(reversed, {1, 1}).cls == ConeClass::Xminus);
  const auto never = PreorderOracle::external("incomparable",
                                              [](const RandomVariable& x, const RandomVariable& y) {
                                                return x == y ? Relation::Equivalent : Relation::Incomparable;
                                              });
  CHECK(classify_cone_point(never, {1, 1}).cls == ConeClass::Undetermined);
}

TEST_CASE("property: Choquet cone classes follow the sign of the utility") {
  std::mt19937_64 gen(50);
  for (const auto& family : seeded_families(51)) {
    const auto order = PreorderOracle::from_family(family);
    auto pts = sample_cone(family.space(), 50, 10.0, gen());
    pts.push_back(RandomVariable::zero(family.space().size()));
    for (const auto& x : pts) {
      const auto cls = classify_cone_point(order, x, {2.0, 3.25}).cls;
      CHECK(cls != ConeClass::Xminus);
      bool all_zero = true;
      for (const auto& mu : family.members()) all_zero = all_zero && choquet_integral(mu, x) == 0.0;
      if (family_utility(family, x) > 1e-6) CHECK(cls == ConeClass::Xplus);
      if (all_zero) CHECK(cls == ConeClass::X0);
    }
  }
  // A capacity that ignores state a: indicators of {a} are in X0.
  const auto blind = validate_capacity(kAB, {0.0, 0.0, 0.7, 1.0});
  const auto order = PreorderOracle::from_family(CapacityFamily({blind}));
  CHECK(classify_cone_point(order, {5, 0}).cls == ConeClass::X0);
  CHECK(classify_cone_point(order, {5, 1}).cls == ConeClass::Xplus);
}

TEST_CASE("is_homothetic_sample") {
  const auto order = PreorderOracle::from_family(CapacityFamily({mu_star()}));
  const auto xs = sample_cone(kAB, 100, 10.0, 60);
  const auto ys = sample_cone(kAB, 100, 10.0, 61);
  std::vector<PointPair> pairs;
  for (std::size_t i = 0; i < xs.size(); ++i) pairs.emplace_back(xs[i], ys[i]);
  const auto r = is_homothetic_sample(order, pairs, {0.5, 2.0, 3.0});
  CHECK(r.holds);
  CHECK(r.checked == 300);

  const auto bad = is_homothetic_sample(square_oracle(), {{{0, 1}, {1.5, 0}}}, {2.0});
  CHECK_FALSE(bad.holds);
  REQUIRE(bad.witness);
  CHECK(bad.witness->before == Relation::StrictlyLess);
  CHECK(bad.witness->after == Relation::StrictlyGreater);
  CHECK(bad.witness->t == 2.0);

  CHECK(is_homothetic_sample(square_oracle(), pairs, {1.0}).holds);
  CHECK_THROWS_AS(is_homothetic_sample(order, {}, {2.0}), PreconditionError);
}

TEST_CASE("is_complete_sample") {
  const auto xs = sample_cone(kAB, 100, 10.0, 70);
  const auto ys = sample_cone(kAB, 100, 10.0, 71);
  std::vector<PointPair> pairs;
  for (std::size_t i = 0; i < xs.size(); ++i) pairs.emplace_back(xs[i], ys[i]);
  CHECK(is_complete_sample(PreorderOracle::from_family(CapacityFamily({mu_star()})), pairs).holds);

  const auto two = PreorderOracle::from_family(CapacityFamily({mu_star(), point_mass_b()}));
  const auto r = is_complete_sample(two, {{{1, 1}, {2, 2}}, {{1, 0}, {0, 1}}});
  CHECK_FALSE(r.holds);
  REQUIRE(r.witness);
  CHECK(r.witness->first == RandomVariable{1, 0});
  CHECK(r.witness->second == RandomVariable{0, 1});

  std::vector<PointPair> same;
  for (const auto& x : xs) same.emplace_back(x, x);
  CHECK(is_complete_sample(two, same).holds);
}

TEST_CASE("order_dense_witness") {
  const auto order = PreorderOracle::from_family(CapacityFamily({mu_star()}));
  const auto q = order_dense_witness(order, {1, 1}, {1, 0}, {2, 1}, 10);
  REQUIRE(q);
  CHECK(*q == PositiveRational(1));
  const double qd = q->to_double();
  CHECK(0.6 < qd);
  CHECK(qd < 1.6);

  CHECK_THROWS_AS(order_dense_witness(order, {1, 1}, {2, 1}, {1, 0}, 10), PreconditionError);
  CHECK_THROWS_AS(order_dense_witness(order, {0, 0}, {1, 0}, {2, 1}, 10), PreconditionError);
  CHECK_THROWS_AS(order_dense_witness(order, {1, 1}, {1, 0}, {2, 1}, 0), PreconditionError);

  // u(y) = 0.6005: the gap (0.6, 0.6005) holds no dyadic with denominator 2,
  // but one appears once the grid is fine enough.
  const RandomVariable y{0.6005, 0.6005};
  CHECK_FALSE(order_dense_witness(order, {1, 1}, {1, 0}, y, 1));
  const auto deep = order_dense_witness(order, {1, 1}, {1, 0}, y, 20);
  REQUIRE(deep);
  CHECK(deep->to_double() > 0.6);
  CHECK(deep->to_double() < 0.6005);
}

TEST_CASE("property: Corollary conditions on the Choquet preorder") {
  std::mt19937_64 gen(80);
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t n = 2 + gen() % 3;
    // A capacity blind to state 0 gives a nontrivial X0 along that axis.
    const auto rest = oracle::random_concave_capacity(n - 1, gen);
    std::vector<double> blind(std::size_t{1} << n);
    for (std::uint32_t s = 0; s < blind.size(); ++s) blind[s] = rest(SubsetMask{s >> 1});
    const auto mu = validate_capacity(StateSpace::with_size(n), blind);
    REQUIRE(is_concave(mu).concave);
    const auto order = PreorderOracle::from_family(CapacityFamily({mu}));
    const RandomVariable x_plus(std::vector<double>(n, 1.0));
    REQUIRE(classify_cone_point(order, x_plus).cls == ConeClass::Xplus);

    std::vector<RandomVariable> x0;
    for (int k = 0; k < 10; ++k) {
      std::vector<double> v(n, 0.0);
      v[0] = oracle::uniform(gen, 0.0, 10.0);
      x0.emplace_back(v);
    }
    for (const auto& a : x0) {
      REQUIRE(classify_cone_point(order, a).cls == ConeClass::X0);
      for (const auto& b : x0) CHECK(order(a, b) == Relation::Equivalent);  // (d)
      CHECK(order(a, x_plus) == Relation::StrictlyLess);                    // (e)
    }

    // (f): x ≺ q·x+ and y ≺ r·x+ imply x+y ≺ (q+r)·x+.
    const auto xs = sample_cone(mu.space(), 60, 5.0, gen());
    const auto ys = sample_cone(mu.space(), 60, 5.0, gen());
    const PositiveRational rats[] = {{1, 2}, {1}, {3, 2}, {5, 2}, {4}, {13, 4}};
    int antecedents = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (const auto& q : rats) {
        for (const auto& r : rats) {
          const bool ax = order(xs[i], scale_point(x_plus, q.to_double())) == Relation::StrictlyLess;
          const bool ay = order(ys[i], scale_point(x_plus, r.to_double())) == Relation::StrictlyLess;
          if (!(ax && ay)) continue;
          ++antecedents;
          CHECK(order(add_points(xs[i], ys[i]), scale_point(x_plus, (q + r).to_double())) ==
                Relation::StrictlyLess);
        }
      }
    }
    CHECK(antecedents > 0);
  }
}
