#include <doctest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "sdlab/domains.hpp"

using namespace sdlab;
using namespace sdlab::domains;
using arith::IntervalSet;
using arith::OpenInterval;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex E(Complex z) { return std::exp(Complex(0.0, kTwoPi) * z); }

IntervalSet unit_gap() { return IntervalSet::from_intervals({{Rational(0), Rational(1)}}); }

}  // namespace

TEST_CASE("empty complement gives the whole sphere") {
  auto dom = build_domain(IntervalSet());
  CHECK(dom.profile()(make_rational(1, 3)) == 0);
  CHECK(dom.contains(Complex(0.3, 0.4)));
  CHECK(dom.contains(SpecialPoint::zero));
  CHECK(dom.contains(SpecialPoint::infinity));
  auto c = curves(dom, 4);
  for (const auto& v : c.inner) CHECK(std::abs(std::abs(v.q) - 1.0) < 1e-15);
  for (const auto& v : c.outer) CHECK(std::abs(std::abs(v.q) - 1.0) < 1e-15);
}

TEST_CASE("single gap tent") {
  auto dom = build_domain(unit_gap());
  CHECK(dom.profile()(make_rational(1, 4)) == make_rational(1, 4));
  CHECK(dom.profile()(make_rational(7, 10)) == make_rational(3, 10));
  CHECK(dom.contains(E(Complex(0.5, 0.5))));
  CHECK(dom.contains(E(Complex(0.5, -0.6))));
  CHECK_FALSE(dom.contains(E(Complex(0.5, 0.45))));
  CHECK(dom.contains(Complex(0.0)));

  auto c = curves(dom, 8);
  double min_r = 10.0;
  for (const auto& v : c.inner) min_r = std::min(min_r, std::abs(v.q));
  CHECK(std::abs(min_r - std::exp(-std::numbers::pi)) < 1e-14);
  CHECK(std::abs(c.inner.front().q - c.inner.back().q) < 1e-14);
}

TEST_CASE("point over the middle of a gap at a quarter of its length is excluded") {
  auto set = IntervalSet::from_intervals({{make_rational(1, 5), make_rational(3, 5)}});
  auto dom = build_domain(set);
  double L = 0.4;
  CHECK_FALSE(dom.contains(E(Complex(0.4, L / 4))));
  CHECK(dom.contains(E(Complex(0.4, L / 2))));
  CHECK(dom.contains(E(Complex(0.7, 0.0))));
  CHECK(dom.contains_rotation(make_rational(2, 5), make_rational(1, 5)));
  CHECK_FALSE(dom.contains_rotation(make_rational(2, 5), make_rational(1, 10)));
}

TEST_CASE("property: distance profile is 1-Lipschitz") {
  auto set = arith::complement_C(Rational(10), Rational(1), 30);
  DistanceProfile phi(set);
  for (int i = 0; i < 10000; ++i) {
    Rational a = make_rational(testgen::uniform(0, 100000), 100000);
    Rational b = make_rational(testgen::uniform(0, 100000), 100000);
    CHECK(abs(phi(a) - phi(b)) <= abs(a - b));
  }
}

TEST_CASE("property: circle membership matches the interval set") {
  auto set = arith::complement_C(Rational(12), Rational(1, 2), 25);
  auto dom = build_domain(set);
  for (int i = 0; i < 10000; ++i) {
    Rational x = make_rational(testgen::uniform(1, 99999), 100000);
    CHECK(dom.contains_rotation(x, Rational(0)) == !set.contains(x));
    double xd = to_double(x);
    if (std::abs(dom.profile()(xd)) > 1e-12 || !set.contains(x)) CHECK(dom.contains(E(xd)) == !set.contains(x));
  }
}

TEST_CASE("property: diamonds tile the complement") {
  auto set = arith::dc_complement(make_rational(1, 20), Rational(1), 12);
  auto dom = build_domain(set);
  const double top = to_double(dom.profile().max_value());
  for (int i = 0; i < 10000; ++i) {
    double x = testgen::uniform_real(0.0, 1.0);
    double y = testgen::uniform_real(1e-9, top);
    int hits = 0;
    for (const auto& d : dom.diamonds()) hits += d.contains(x, y) ? 1 : 0;
    CHECK(hits == (dom.profile()(x) > y ? 1 : 0));
    CHECK(dom.contains(E(Complex(x, y))) == (hits == 0));
  }
}

TEST_CASE("property: membership is monotone in the distance from the circle") {
  auto dom = build_domain(arith::complement_C(Rational(8), Rational(1), 15));
  for (int i = 0; i < 2000; ++i) {
    double x = testgen::uniform_real(0.0, 1.0);
    double y = testgen::uniform_real(0.0, 0.2);
    double s = testgen::uniform_real(1.0, 3.0);
    if (dom.contains(E(Complex(x, y)))) {
      CHECK(dom.contains(E(Complex(x, s * y))));
      CHECK(dom.contains(E(Complex(x, -s * y))));
    }
  }
}

TEST_CASE("curves touch the circle exactly over A") {
  auto dom = build_domain(IntervalSet::from_intervals({{make_rational(1, 10), make_rational(3, 10)},
                                                       {make_rational(1, 2), make_rational(9, 10)}}));
  auto c = curves(dom, 6);
  for (size_t i = 0; i < c.inner.size(); ++i) {
    bool on_circle = std::abs(std::abs(c.inner[i].q) - 1.0) < 1e-15;
    CHECK(on_circle == (dom.profile()(c.inner[i].x) == 0.0));
    CHECK(std::abs(c.inner[i].q) <= 1.0 + 1e-15);
    CHECK(std::abs(c.outer[i].q) >= 1.0 - 1e-15);
  }
  bool apex = false;
  for (const auto& v : c.inner) apex = apex || std::abs(v.x - 0.7) < 1e-15;
  CHECK(apex);
  CHECK(c.chord_error > 0.0);
  CHECK_THROWS(curves(dom, 1));
}

TEST_CASE("Melnikov partial sums") {
  auto dom = build_domain(IntervalSet::from_intervals({{make_rational(1, 10), make_rational(3, 10)}}));
  CHECK(melnikov_sum(dom, Complex(2.0), 0, 8).value == 0.0);

  auto res = melnikov_sum(dom, Complex(2.0), 1, 16);
  // bracket by perimeter times extreme inverse cube distances, sampled densely on the boundary
  double perimeter = 0.0, dmin = 1e9, dmax = 0.0;
  const Complex L(0.1, 0.0), T(0.2, 0.1), R(0.3, 0.0), B(0.2, -0.1);
  std::vector<std::pair<Complex, Complex>> edges{{L, T}, {T, R}, {R, B}, {B, L}};
  for (auto [a, b] : edges) {
    const int n = 20000;
    for (int j = 0; j < n; ++j) {
      Complex z0 = a + (b - a) * (static_cast<double>(j) / n);
      Complex z1 = a + (b - a) * (static_cast<double>(j + 1) / n);
      perimeter += std::abs(E(z1) - E(z0));
      double dist = std::abs(E(z0) - 2.0);
      dmin = std::min(dmin, dist);
      dmax = std::max(dmax, dist);
    }
  }
  CHECK(res.value <= perimeter * 1.0001 / (dmin * dmin * dmin));
  CHECK(res.value >= perimeter * 0.9999 / (dmax * dmax * dmax));

  auto rich = melnikov_sum(dom, Complex(1.3, 0.4), 1, 8);
  auto doubled = melnikov_sum(dom, Complex(1.3, 0.4), 1, 16);
  CHECK(std::abs(rich.value - doubled.value) < rich.error_estimate);

  CHECK_THROWS_AS(melnikov_sum(dom, E(Complex(0.1, 0.0)), 1, 8), QTooClose);

  auto many = build_domain(arith::complement_C(Rational(10), Rational(1), 6));
  auto partial = melnikov_sum(many, Complex(3.0), 2, 8);
  CHECK(partial.components == 2);
  CHECK(partial.omitted == many.diamonds().size() - 2);
  CHECK(std::isfinite(partial.omitted_bound));
}

TEST_CASE("non-tangential cones") {
  const double x = 0.61803398874989485;
  auto cone = nontangential_cone(x, 2.0, 0.5);
  CHECK(cone(cone.radial(0.25, true)));
  CHECK(cone(cone.radial(0.25, false)));
  CHECK(cone(std::polar(1.0, kTwoPi * x)));
  CHECK_FALSE(cone(cone.radial(0.6, true)));
  // theta - x = d, |r - 1| = d/(2c): c d = 1 exceeds d/(2c) = 1/8
  CHECK_FALSE(cone(std::polar(1.0 + 0.125, kTwoPi * (x + 0.5))));
  auto wide = nontangential_cone(x, 0.1, 0.9);
  // c |theta - x| = 0.01 <= 0.05 <= d
  CHECK(wide(std::polar(0.95, kTwoPi * (x + 0.1))));
  CHECK_THROWS(nontangential_cone(x, 0.0, 0.5));
  CHECK_THROWS(nontangential_cone(x, 1.0, 1.0));
}
