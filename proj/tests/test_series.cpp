#include <doctest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "sdlab/series.hpp"

using namespace sdlab;
using namespace sdlab::series;

namespace {

using QSeries = PowerSeries<QComplex>;

QComplex random_qcomplex() {
  return {make_rational(testgen::uniform(-9, 9), testgen::uniform(1, 5)),
          make_rational(testgen::uniform(-9, 9), testgen::uniform(1, 5))};
}

QSeries random_series(Index order, bool constant) {
  QSeries p(order);
  for (Index k = constant ? 0 : 1; k <= order; ++k) p[k] = random_qcomplex();
  return p;
}

// Untruncated polynomial product on plain coefficient vectors.
std::vector<QComplex> poly_mul(const std::vector<QComplex>& a, const std::vector<QComplex>& b) {
  std::vector<QComplex> c(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

// sum_j outer_j inner^j by full monomial expansion, truncated only at the end.
std::vector<QComplex> brute_compose(const QSeries& outer, const QSeries& inner) {
  std::vector<QComplex> in(inner.coeffs().data(), inner.coeffs().data() + inner.coeffs().size());
  std::vector<QComplex> total(1, QComplex());
  std::vector<QComplex> power(1, QComplex(1));
  for (Index j = 0; j <= outer.order(); ++j) {
    if (total.size() < power.size()) total.resize(power.size());
    for (size_t i = 0; i < power.size(); ++i) total[i] += outer[j] * power[i];
    power = poly_mul(power, in);
  }
  total.resize(static_cast<size_t>(inner.order() + 1));
  return total;
}

CFourier mode_sum(std::initializer_list<std::pair<Index, Complex>> modes, Index N, double width = 0.0) {
  CFourier v(N, width);
  for (auto [k, c] : modes) v[k] = c;
  return v;
}

}  // namespace

TEST_CASE("composition examples") {
  auto z = QSeries::identity(4);
  auto inner = QSeries::identity(4);
  inner[2] = QComplex(1);
  auto zz = QSeries::monomial(2, QComplex(1), 4);
  auto r = ps_compose(zz, inner);
  CHECK(r[2] == QComplex(1));
  CHECK(r[3] == QComplex(2));
  CHECK(r[4] == QComplex(1));
  CHECK(r[0] == QComplex(0));

  auto f = random_series(6, false);
  auto id = ps_compose(QSeries::identity(6), f);
  for (Index k = 0; k <= 6; ++k) CHECK(id[k] == f[k]);

  auto bad = QSeries::identity(3);
  bad[0] = QComplex(1);
  CHECK_THROWS_AS(ps_compose(z, bad), std::invalid_argument);
}

TEST_CASE("property: composition matches brute-force expansion and is associative") {
  for (int trial = 0; trial < 40; ++trial) {
    Index N = testgen::uniform(1, 8);
    auto outer = random_series(N, true);
    auto inner = random_series(N, false);
    auto fast = ps_compose(outer, inner);
    auto slow = brute_compose(outer, inner);
    for (Index k = 0; k <= N; ++k) CHECK(fast[k] == slow[static_cast<size_t>(k)]);

    if (N <= 5) {
      auto a = random_series(N, true);
      auto b = random_series(N, false);
      auto c = random_series(N, false);
      auto left = ps_compose(ps_compose(a, b), c);
      auto right = ps_compose(a, ps_compose(b, c));
      for (Index k = 0; k <= N; ++k) CHECK(left[k] == right[k]);
    }
  }
}

TEST_CASE("series arithmetic truncates at the smaller order") {
  auto a = QSeries::identity(5);
  auto b = QSeries::identity(3);
  auto s = a + b;
  CHECK(s.order() == 3);
  CHECK(s.discarded_tail());
  auto p = QSeries::identity(3) * QSeries::identity(3);
  CHECK(p[2] == QComplex(1));
  CHECK_FALSE(p.discarded_tail());
  auto full = QSeries::monomial(2, QComplex(1), 3) * QSeries::monomial(2, QComplex(1), 3);
  CHECK(full.discarded_tail());
}

TEST_CASE("Fourier evaluation") {
  auto e1 = CFourier::single_mode(1, 3);
  CHECK(std::abs(fs_eval(e1, 0.0) - Complex(1.0)) < 1e-15);
  auto sym = mode_sum({{1, 1.0}, {-1, 1.0}}, 2);
  CHECK(std::abs(fs_eval(sym, 0.25)) < 1e-15);

  auto hermitian = mode_sum({{0, 0.3}, {1, Complex(0.2, 0.7)}, {-1, Complex(0.2, -0.7)}, {2, Complex(-1, 2)}, {-2, Complex(-1, -2)}}, 2);
  for (double t : {0.1, 0.37, 0.9}) CHECK(std::abs(fs_eval(hermitian, t).imag()) < 1e-14);

  auto narrow = mode_sum({{1, 1.0}}, 1, 0.5);
  CHECK_NOTHROW(fs_eval(narrow, Complex(0.0, 0.25)));
  CHECK_THROWS_AS(fs_eval(narrow, Complex(0.0, 0.3)), OutOfAnnulus);
}

TEST_CASE("coefficients from samples") {
  auto v = fs_coeffs_from_samples([](double t) { return std::exp(Complex(0, 2 * std::numbers::pi * 2 * t)); }, 3, 8);
  for (Index k = -3; k <= 3; ++k) CHECK(std::abs(v[k] - Complex(k == 2 ? 1.0 : 0.0)) < 1e-14);

  auto geo = fs_coeffs_from_samples(
      [](double t) { return 1.0 / (2.0 - std::exp(Complex(0, 2 * std::numbers::pi * t))); }, 10, 128);
  for (Index k = -10; k <= 10; ++k) {
    double expected = k >= 0 ? std::pow(2.0, -static_cast<double>(k) - 1.0) : 0.0;
    CHECK(std::abs(geo[k] - Complex(expected)) < 1e-14);
  }

  CHECK_THROWS_AS(fs_coeffs_from_samples([](double) { return Complex(1.0); }, 5, 10), std::invalid_argument);
}

TEST_CASE("aliasing bound is consistent under grid doubling") {
  // f(t) = 1/(2 - e(t)) is bounded by 1/(2 - e^{2 pi rho}) on |Im t| <= rho; declare width 2 rho
  const double rho = 0.08;
  const double B = 1.0 / (2.0 - std::exp(2 * std::numbers::pi * rho));
  auto f = [](double t) { return 1.0 / (2.0 - std::exp(Complex(0, 2 * std::numbers::pi * t))); };
  auto coarse = fs_coeffs_from_samples(f, 6, 40, 2 * rho, B);
  auto fine = fs_coeffs_from_samples(f, 6, 80, 2 * rho, B);
  REQUIRE(coarse.aliasing_bound() > 0.0);
  for (Index k = -6; k <= 6; ++k) {
    CHECK(std::abs(coarse[k] - fine[k]) <= coarse.aliasing_bound() + fine.aliasing_bound());
    CHECK(std::abs(fine[k]) <= B * std::exp(-std::numbers::pi * std::abs(static_cast<double>(k)) * 2 * rho) *
                                   (1.0 + fine.aliasing_bound()));
  }
}

TEST_CASE("property: sampling inverts evaluation on band-limited data") {
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 30; ++trial) {
    Index N = testgen::uniform(1, 12);
    CFourier v(N);
    for (Index k = -N; k <= N; ++k) v[k] = Complex(normal(testgen::rng()), normal(testgen::rng()));
    Index grid = 2 * N + 1 + testgen::uniform(0, 10);
    auto back = fs_coeffs_from_samples([&](double t) { return fs_eval(v, t); }, N, grid);
    double scale = coefficient_norm_bound(v, 0.0);
    for (Index k = -N; k <= N; ++k) CHECK(std::abs(back[k] - v[k]) <= 1e-12 * scale);
  }
}

TEST_CASE("projections partition the modes") {
  auto v = mode_sum({{-2, 1.0}, {-1, 2.0}, {0, 3.0}, {1, 4.0}, {2, 5.0}}, 2);
  auto sum = project(v, Projection::plus()) + project(v, Projection::minus()) + project(v, Projection::mode(0));
  for (Index k = -2; k <= 2; ++k) CHECK(sum[k] == v[k]);
  auto two = project(mode_sum({{1, 1.0}, {2, 1.0}}, 2), Projection::mode(2));
  CHECK(two[2] == Complex(1.0));
  CHECK(two[1] == Complex(0.0));
  auto pp = project(project(v, Projection::plus()), Projection::plus());
  for (Index k = -2; k <= 2; ++k) CHECK(pp[k] == project(v, Projection::plus())[k]);
}

TEST_CASE("property: half-projection norm bound") {
  std::normal_distribution<double> normal;
  for (double R : {0.5, 1.0}) {
    const double bound = half_projection_bound(R);
    for (int trial = 0; trial < 40; ++trial) {
      Index N = testgen::uniform(1, 8);
      CFourier v(N, R);
      for (Index k = -N; k <= N; ++k)
        v[k] = std::exp(-std::numbers::pi * std::abs(static_cast<double>(k)) * R) *
               Complex(normal(testgen::rng()), normal(testgen::rng()));
      double nv = sup_norm_strip(v, R / 2).value;
      CHECK(sup_norm_strip(project(v, Projection::plus()), R / 2).value <= bound * nv * 1.01);
      CHECK(sup_norm_strip(project(v, Projection::minus()), R / 2).value <= bound * nv * 1.01);
      CHECK(sup_norm_strip(project(v, Projection::mode(1)), R / 2).value <= nv * 1.01);
    }
  }
}

TEST_CASE("norm estimates") {
  auto e1 = CFourier::single_mode(1, 2);
  auto n = sup_norm_strip(e1, 0.5);
  CHECK(std::abs(n.value - std::exp(std::numbers::pi)) < 1e-12);
  CHECK(std::abs(coefficient_norm_bound(e1, 0.5) - std::exp(std::numbers::pi)) < 1e-12);

  CSeries p(3);
  p[1] = 1.0;
  p[3] = 2.0;
  CHECK(std::abs(sup_norm_disk(p, 0.5).value - 0.75) < 1e-12);
}
