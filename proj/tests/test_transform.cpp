#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <random>

#include "boolcl/measure.hpp"
#include "boolcl/transform.hpp"
#include "support/generators.hpp"

using boolcl::Atom;
using boolcl::AtomicMeasure;
using boolcl::ComplexPoint;
using boolcl::Polynomial;
using boolcl::Rational;
using boolcl::RationalFn;
using P = Polynomial<Rational>;

namespace {
// weights held as true fifths so the exact-identity checks below are exact
const AtomicMeasure kTwoAtom(std::vector<boolcl::ExactAtom>{{Rational(-1, 2), Rational(4, 5)},
                                                            {Rational(2), Rational(1, 5)}});
}

TEST_CASE("cauchy transform as an exact rational function") {
  const auto gb = boolcl::cauchy_transform_exact(AtomicMeasure::bernoulli());
  CHECK(gb.num() == P::x());
  CHECK(gb.den() == P(std::vector<Rational>{Rational(-1), Rational(0), Rational(1)}));

  const auto g0 = boolcl::cauchy_transform_exact(AtomicMeasure::point_mass(0.0));
  CHECK(g0.num() == P::constant(Rational(1)));
  CHECK(g0.den() == P::x());

  // (z - 3/2) / (z^2 - (3/2)z - 1)
  const auto g = boolcl::cauchy_transform_exact(kTwoAtom);
  CHECK(g.num() == P(std::vector<Rational>{Rational(-3, 2), Rational(1)}));
  CHECK(g.den() == P(std::vector<Rational>{Rational(-1), Rational(-3, 2), Rational(1)}));

  CHECK(boolcl::cauchy_transform_exact(AtomicMeasure()).is_zero());
}

TEST_CASE("pointwise transform evaluation") {
  const AtomicMeasure b = AtomicMeasure::bernoulli();
  const std::complex<double> i(0.0, 1.0);
  CHECK(std::abs(boolcl::eval_cauchy(b, i) - std::complex<double>(0.0, -0.5)) <= 1e-15);
  CHECK(std::abs(boolcl::eval_f_transform(b, 2.0 * i) - std::complex<double>(0.0, 2.5)) <= 1e-15);

  const ComplexPoint z{0.7, 1.3};
  const auto direct = boolcl::eval_cauchy(AtomicMeasure::point_mass(0.0), z);
  const auto expect = std::complex<double>(0.7, -1.3) / (0.7 * 0.7 + 1.3 * 1.3);
  CHECK(std::abs(direct - expect) <= 1e-15);

  CHECK(boolcl::eval_cauchy(AtomicMeasure(), z) == std::complex<double>(0.0, 0.0));
  CHECK_THROWS_AS(boolcl::eval_cauchy(b, std::complex<double>(0.0, -1.0)), boolcl::invalid_input);
  CHECK_THROWS_AS((ComplexPoint{0.0, 0.0}), boolcl::invalid_input);
}

TEST_CASE("rational and direct evaluation agree") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> ux(-3.0, 3.0), uy(0.05, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const AtomicMeasure mu = testgen::random_probability_measure(rng, 6);
    const auto g = boolcl::cauchy_transform_exact(mu);
    const ComplexPoint z{ux(rng), uy(rng)};
    const auto a = boolcl::eval_cauchy(mu, z);
    const auto b = boolcl::eval_cauchy(g, z);
    CHECK(std::abs(a - b) <= 1e-12 * (1.0 + std::abs(a)));
  }
}

TEST_CASE("nevanlinna sign properties on random samples") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> ux(-4.0, 4.0), uy(0.05, 3.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const AtomicMeasure mu = testgen::random_probability_measure(rng, 6);
    const ComplexPoint z{ux(rng), uy(rng)};
    CHECK(boolcl::eval_cauchy(mu, z).imag() <= 0.0);
    CHECK(boolcl::eval_f_transform(mu, z).imag() >= z.y - 1e-12);
  }
}

TEST_CASE("transform magnitude bounds") {
  const AtomicMeasure b = AtomicMeasure::bernoulli();
  const ComplexPoint z{2.0, 0.1};
  CHECK(boolcl::cauchy_moment_bound(b, z, 2) == 11.0);  // 2/2 + 4/(0.1*4)
  CHECK(std::abs(boolcl::eval_cauchy(b, z)) < 11.0);

  // order 0 reduces to 2*mass/|x| + mass/y
  CHECK(boolcl::cauchy_moment_bound(b, z, 0) == 2.0 / 2.0 + 1.0 / 0.1);

  const ComplexPoint unit{0.3, 1.0};
  CHECK(boolcl::cauchy_mass_bound(AtomicMeasure::point_mass(0.0), unit) == 1.0);
  CHECK(std::abs(boolcl::eval_cauchy(AtomicMeasure::point_mass(0.0), unit)) <= 1.0);

  CHECK_THROWS_AS(boolcl::cauchy_moment_bound(b, ComplexPoint{0.0, 1.0}, 2),
                  boolcl::invalid_input);
  CHECK_THROWS_AS(boolcl::cauchy_moment_bound(b, z, -1), boolcl::invalid_input);

  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> ux(-4.0, 4.0), uy(0.05, 3.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const AtomicMeasure mu = testgen::random_probability_measure(rng, 6);
    double x = ux(rng);
    if (std::abs(x) < 1e-3) x = 1e-3;
    const ComplexPoint p{x, uy(rng)};
    const double g = std::abs(boolcl::eval_cauchy(mu, p));
    CHECK(g <= boolcl::cauchy_mass_bound(mu, p));
    for (int i = 0; i <= 4; ++i) CHECK(g < boolcl::cauchy_moment_bound(mu, p, i));
  }
}

TEST_CASE("measure recovery from a reciprocal transform") {
  // F(z) = z - 1/z as (z^2-1)/z
  const RationalFn<Rational> f(P(std::vector<Rational>{Rational(-1), Rational(0), Rational(1)}),
                               P::x());
  CHECK(boolcl::recover_measure(f) == AtomicMeasure::bernoulli());

  // (z^2 - (3/2)z - 2)/(z - 3/2): poles of 1/F at (1.5 +- sqrt(10.25))/2
  const RationalFn<Rational> f2(
      P(std::vector<Rational>{Rational(-2), Rational(-3, 2), Rational(1)}),
      P(std::vector<Rational>{Rational(-3, 2), Rational(1)}));
  const AtomicMeasure rec = boolcl::recover_measure(f2);
  REQUIRE(rec.size() == 2);
  const double r = std::sqrt(10.25);
  CHECK(std::abs(rec.location(0) - (1.5 - r) / 2.0) <= 1e-12);
  CHECK(std::abs(rec.location(1) - (1.5 + r) / 2.0) <= 1e-12);
  CHECK(std::abs(rec.total_mass() - 1.0) <= 1e-12);

  // degree contract: deg num must exceed deg den by exactly 1
  CHECK_THROWS_AS(boolcl::recover_measure(RationalFn<Rational>(P::x(), P::x())),
                  boolcl::invalid_input);
}

TEST_CASE("recovery round trips the transform of random measures") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    const AtomicMeasure mu = testgen::random_probability_measure(rng, 6);
    const AtomicMeasure back = boolcl::recover_measure(
        boolcl::cauchy_transform_exact(mu).reciprocal());
    REQUIRE(back.size() == mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) {
      CHECK(std::abs(back.location(i) - mu.location(i)) <= 1e-12);
      CHECK(std::abs(back.weight(i) - mu.weight(i)) <= 1e-12);
    }
  }
}

TEST_CASE("complex poles are rejected as non-measures") {
  // z/(z^2+1) has the right degrees but poles at +-i
  const RationalFn<Rational> g(P::x(),
                               P(std::vector<Rational>{Rational(1), Rational(0), Rational(1)}));
  CHECK_THROWS_AS(boolcl::recover_from_cauchy(g, "test"), boolcl::numeric_error);
}

TEST_CASE("continued-fraction representation on worked examples") {
  const auto two = boolcl::extract_representation(kTwoAtom);
  CHECK(std::abs(two.alpha - 1.5) <= 1e-12);
  CHECK(two.alpha_exact == Rational(3, 2));
  CHECK(two.omega.empty());
  CHECK(two.K == 0.0);
  CHECK(two.omega_mass_exact == Rational(0));

  const double s = std::sqrt(2.0);
  const AtomicMeasure sym(std::vector<Atom>{{-s, 0.25}, {0.0, 0.5}, {s, 0.25}});
  const auto three = boolcl::extract_representation(sym);
  CHECK(std::abs(three.alpha) <= 1e-12);
  REQUIRE(three.omega.size() == 1);
  CHECK(std::abs(three.omega.location(0)) <= 1e-9);
  CHECK(std::abs(three.omega.weight(0) - 1.0) <= 1e-9);
  CHECK(std::abs(three.K - 1.0) <= 1e-9);

  const auto bern = boolcl::extract_representation(AtomicMeasure::bernoulli());
  CHECK(bern.alpha == 0.0);
  CHECK(bern.omega.empty());
  CHECK(bern.K == 0.0);

  CHECK_THROWS_AS(boolcl::extract_representation(AtomicMeasure::point_mass(0.0)),
                  boolcl::invalid_input);
  const AtomicMeasure shifted(std::vector<Atom>{{0.0, 0.5}, {1.0, 0.5}});
  CHECK_THROWS_AS(boolcl::extract_representation(shifted), boolcl::invalid_input);
}

TEST_CASE("representation degree bookkeeping and exact moment identities") {
  std::mt19937_64 rng(41);
  for (int k = 2; k <= 6; ++k) {
    for (int trial = 0; trial < 20; ++trial) {
      const AtomicMeasure mu = testgen::random_standardized_measure(rng, k);
      const auto repr = boolcl::extract_representation(mu);
      CHECK(repr.omega.size() == static_cast<std::size_t>(k - 2));
      CHECK(repr.alpha_exact == mu.moment_exact(3));
      const Rational m3 = mu.moment_exact(3);
      CHECK(repr.omega_mass_exact == mu.moment_exact(4) - m3 * m3 - Rational(1));
      CHECK(repr.K >= 0.0);
    }
  }
}
