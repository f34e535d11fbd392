#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "boolcl/measure.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using boolcl::Atom;
using boolcl::AtomicMeasure;
using boolcl::Rational;

TEST_CASE("construction validates and normalizes atoms") {
  CHECK_THROWS_AS(AtomicMeasure(std::vector<Atom>{{0.0, 0.0}}), boolcl::invalid_input);
  CHECK_THROWS_AS(AtomicMeasure(std::vector<Atom>{{0.0, -1.0}}), boolcl::invalid_input);

  const AtomicMeasure unsorted(std::vector<Atom>{{2.0, 0.25}, {-1.0, 0.75}});
  CHECK(unsorted.location(0) == -1.0);
  CHECK(unsorted.location(1) == 2.0);

  // locations closer than 1e-14 merge, weights summing
  const AtomicMeasure merged(std::vector<Atom>{{1.0, 0.5}, {1.0 + 1e-15, 0.25}});
  REQUIRE(merged.size() == 1);
  CHECK(merged.weight(0) == 0.75);

  CHECK(AtomicMeasure().empty());
  CHECK(AtomicMeasure().total_mass() == 0.0);
}

TEST_CASE("moments evaluate the defining finite sums exactly") {
  const AtomicMeasure b = AtomicMeasure::bernoulli();
  CHECK(b.moment(0) == 1.0);
  CHECK(b.moment(2) == 1.0);
  CHECK(b.moment(3) == 0.0);

  const AtomicMeasure mu(std::vector<boolcl::ExactAtom>{{Rational(-1, 2), Rational(4, 5)},
                                                        {Rational(2), Rational(1, 5)}});
  CHECK(mu.moment_exact(3) == Rational(3, 2));  // (4/5)(-1/8) + (1/5)(8)
  CHECK(mu.moment(3) == 1.5);
  CHECK(mu.moment(1) == 0.0);
  CHECK(mu.moment(2) == 1.0);
  CHECK(mu.abs_moment(1) == 0.8);
  CHECK(AtomicMeasure().moment(5) == 0.0);
}

TEST_CASE("cdf right-continuity and left limits") {
  const AtomicMeasure b = AtomicMeasure::bernoulli();
  const boolcl::Cdf F = b.cdf();
  CHECK(F.value(-2.0) == 0.0);
  CHECK(F.value(-1.0) == 0.5);
  CHECK(F.left_limit(-1.0) == 0.0);
  CHECK(F.value(0.0) == 0.5);
  CHECK(F.value(1.0) == 1.0);
  CHECK(F.left_limit(1.0) == 0.5);
  CHECK(F.total() == 1.0);

  CHECK(b.mass_interval(-1.0, 1.0) == 0.5);   // half-open (a, b]
  CHECK(b.mass_interval(-1.5, 1.0) == 1.0);
  CHECK(b.mass_interval(1.0, 5.0) == 0.0);
}

TEST_CASE("dilation scales locations and keeps weights") {
  CHECK(boolcl::dilate(AtomicMeasure::point_mass(1.0), 2.0) == AtomicMeasure::point_mass(2.0));
  CHECK(boolcl::dilate(AtomicMeasure::bernoulli(), 1.0) == AtomicMeasure::bernoulli());
  const AtomicMeasure wide(std::vector<Atom>{{-2.0, 0.5}, {2.0, 0.5}});
  CHECK(boolcl::dilate(wide, 0.5) == AtomicMeasure::bernoulli());
  CHECK_THROWS_AS(boolcl::dilate(wide, 0.0), boolcl::invalid_input);
  CHECK_THROWS_AS(boolcl::dilate(wide, -1.0), boolcl::invalid_input);
}

TEST_CASE("levy distance on worked instances") {
  const AtomicMeasure d0 = AtomicMeasure::point_mass(0.0);
  CHECK(boolcl::levy_distance(d0, d0) == 0.0);
  CHECK(std::abs(boolcl::levy_distance(d0, AtomicMeasure::point_mass(0.5)) - 0.5) <= 1e-11);
  CHECK(std::abs(boolcl::levy_distance(d0, AtomicMeasure::point_mass(3.0)) - 1.0) <= 1e-11);
  CHECK(std::abs(boolcl::levy_distance(AtomicMeasure::bernoulli(), d0) - 0.5) <= 1e-11);

  const AtomicMeasure half(std::vector<Atom>{{0.0, 0.5}});
  CHECK_THROWS_AS(boolcl::levy_distance(half, d0), boolcl::invalid_input);
}

TEST_CASE("levy distance is a metric on random triples") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 40; ++trial) {
    const AtomicMeasure a = testgen::random_probability_measure(rng, 5);
    const AtomicMeasure b = testgen::random_probability_measure(rng, 5);
    const AtomicMeasure c = testgen::random_probability_measure(rng, 5);
    const double dab = boolcl::levy_distance(a, b);
    const double dba = boolcl::levy_distance(b, a);
    const double dac = boolcl::levy_distance(a, c);
    const double dcb = boolcl::levy_distance(c, b);
    CHECK(std::abs(dab - dba) <= 1e-11);
    CHECK(dab <= dac + dcb + 1e-11);
    CHECK(dab <= 1.0);
    CHECK(boolcl::levy_distance(a, a) == 0.0);
  }
}

TEST_CASE("levy distance matches the dense grid-scan oracle") {
  std::mt19937_64 rng(211);
  for (int trial = 0; trial < 40; ++trial) {
    const AtomicMeasure a = testgen::random_probability_measure(rng, 5);
    const AtomicMeasure b = testgen::random_probability_measure(rng, 5);
    const double fast = boolcl::levy_distance(a, b);
    const double slow = testgen::levy_grid_scan(a, b);
    CHECK(std::abs(fast - slow) <= 2e-4);
  }
}

TEST_CASE("bernoulli concentration on worked instances") {
  const auto exact = boolcl::bernoulli_concentration(AtomicMeasure::bernoulli());
  CHECK(exact.concentrated);
  CHECK(exact.epsilon == 0.0);
  CHECK(exact.bound == 0.0);

  // mass 2h sits at 0; scaled so variance stays 1
  const double h = 0.01;
  const double s = 1.0 / std::sqrt(1.0 - 2.0 * h);
  const AtomicMeasure defect(
      std::vector<Atom>{{-s, 0.5 - h}, {0.0, 2.0 * h}, {s, 0.5 - h}});
  const auto c = boolcl::bernoulli_concentration(defect);
  REQUIRE(c.concentrated);
  CHECK(c.epsilon > 0.0);
  CHECK(c.epsilon < 1.0);
  CHECK(c.bound >= boolcl::levy_distance(defect, AtomicMeasure::bernoulli()) - 1e-11);

  // atoms just off +-1
  const double q = 1.0 + 1e-6;
  const double w = 1.0 / (1.0 + q * q);
  const AtomicMeasure near(std::vector<Atom>{{-q, w}, {1.0 / q, 1.0 - w}});
  const auto n = boolcl::bernoulli_concentration(near);
  REQUIRE(n.concentrated);
  CHECK(n.epsilon > 0.0);
  CHECK(n.epsilon <= 2e-6);

  CHECK_THROWS_AS(boolcl::bernoulli_concentration(AtomicMeasure::point_mass(0.0)),
                  boolcl::invalid_input);
}

TEST_CASE("concentration bound dominates the levy distance on samples") {
  std::mt19937_64 rng(307);
  const AtomicMeasure b = AtomicMeasure::bernoulli();
  for (int trial = 0; trial < 30; ++trial) {
    const AtomicMeasure mu = testgen::random_standardized_measure(rng, 2 + trial % 5);
    const auto c = boolcl::bernoulli_concentration(mu);
    if (c.concentrated && c.epsilon < 1.0)
      CHECK(boolcl::levy_distance(mu, b) <= c.bound + 1e-11);
  }
}
