#include <doctest.h>

#include <cmath>
#include <numbers>

#include "generators.hpp"
#include "sdlab/solvers.hpp"

using namespace sdlab;
using namespace sdlab::solvers;
using series::CFourier;

namespace {

using QSeries = PowerSeries<QComplex>;

QComplex random_q() {
  for (;;) {
    QComplex q{make_rational(testgen::uniform(-20, 20), testgen::uniform(1, 7)),
               make_rational(testgen::uniform(-20, 20), testgen::uniform(1, 7))};
    // the only roots of unity with rational parts
    if (q == QComplex(1) || q == QComplex(-1) || q == QComplex(0, 1) || q == QComplex(0, -1)) continue;
    return q;
  }
}

QSeries random_g(Index N) {
  QSeries g(N);
  for (Index k = 2; k <= N; ++k)
    g[k] = QComplex(make_rational(testgen::uniform(-5, 5), testgen::uniform(1, 4)),
                    make_rational(testgen::uniform(-5, 5), testgen::uniform(1, 4)));
  return g;
}

bool all_zero(const QSeries& r) {
  for (Index k = 0; k <= r.order(); ++k)
    if (!r[k].is_zero()) return false;
  return true;
}

CFourier cos_modes(double R) {
  CFourier g(1, 2 * R);
  g[1] = 1.0;
  g[-1] = 1.0;
  return g;
}

Complex rotation(Complex alpha) { return std::exp(Complex(0, 2 * std::numbers::pi) * alpha); }

}  // namespace

TEST_CASE("cohomological solution") {
  auto g = QSeries::monomial(2, QComplex(1), 4);
  auto sol = solve_L(g, QComplex(2), 4);
  CHECK(sol.h[1] == QComplex(1));
  CHECK(sol.h[2] == QComplex(1));
  CHECK(sol.h[3] == QComplex(0));

  auto g3 = random_g(6);
  auto zero = solve_L(g3, QComplex(0), 6);
  for (Index k = 2; k <= 6; ++k) CHECK(zero.h[k] == -g3[k]);
  CHECK(all_zero(residual_L(zero, g3)));

  PowerSeries<Complex> gc(6);
  gc[4] = 1.0;
  Complex omega = rotation(1.0 / 3.0);
  try {
    solve_L(gc, omega, 6);
    FAIL("expected resonance");
  } catch (const Resonance& r) {
    CHECK(r.index == 4);
  }
  CHECK_THROWS_AS(solve_L(QSeries::identity(3), QComplex(2), 3), std::invalid_argument);
}

TEST_CASE("cohomological residual responds linearly to perturbations") {
  auto g = random_g(8);
  QComplex q(make_rational(3, 2), make_rational(1, 3));
  auto sol = solve_L(g, q, 8);
  QComplex delta(make_rational(1, 7));
  sol.h[2] += delta;
  auto r = residual_L(sol, g);
  CHECK(r[2] == delta * (q * q - q));
  for (Index k = 3; k <= 8; ++k) CHECK(r[k].is_zero());
}

TEST_CASE("cohomological residual in floating point") {
  PowerSeries<Complex> g(50);
  for (Index k = 2; k <= 50; ++k) g[k] = Complex(std::cos(k), std::sin(2.0 * k));
  Complex q = std::polar(0.9, 2.0);
  auto sol = solve_L(g, q, 50);
  auto r = residual_L(sol, g);
  double worst = 0.0;
  for (Index k = 0; k <= 50; ++k) worst = std::max(worst, std::abs(r[k]));
  CHECK(worst < 1e-12 * 10.0);
}

TEST_CASE("property: exact residuals vanish") {
  for (int trial = 0; trial < 8; ++trial) {
    QComplex q = random_q();
    auto gl = random_g(20);
    CHECK(all_zero(residual_L(solve_L(gl, q, 20), gl)));
    auto gs = random_g(7);
    CHECK(all_zero(residual_S(solve_S(gs, q, 7), gs)));
  }
}

TEST_CASE("Siegel recurrence by hand") {
  using R = RatFunc;
  PowerSeries<R> g(3);
  g[2] = R(Rational(3));
  auto sol = solve_S(g, R::variable(), 3);
  Poly q = Poly::variable();
  CHECK(sol.h[2] == R(Poly(Rational(3)), q - Poly(1)));
  CHECK(sol.h[3] == R(Poly(Rational(18)), (q - Poly(1)) * (q * q - Poly(1))));

  auto id = solve_S(PowerSeries<QComplex>(6), QComplex(make_rational(1, 3)), 6);
  for (Index k = 2; k <= 6; ++k) CHECK(id.h[k].is_zero());

  auto gq = random_g(8);
  CHECK(all_zero(residual_S(solve_S(gq, QComplex(3), 8), gq)));
}

TEST_CASE("Siegel limit cases") {
  PowerSeries<RatFunc> g(8);
  for (Index k = 2; k <= 8; ++k) g[k] = RatFunc(make_rational(testgen::uniform(1, 5), testgen::uniform(1, 3)));
  auto sym = solve_S(g, RatFunc::variable(), 8);
  CHECK(symbolic_poles_ok(sym));

  auto gq = random_g(10);
  auto zero = solve_S(gq, QComplex(0), 10);
  CHECK(all_zero(inverse_defect(zero, gq)));

  auto inf = solve_S_at_infinity(gq, 10);
  for (Index k = 2; k <= 10; ++k) CHECK(inf.h[k].is_zero());
  CHECK(inf.h[1] == QComplex(1));
}

TEST_CASE("Siegel residual is triangular") {
  auto g = random_g(8);
  QComplex q(make_rational(5, 3), make_rational(-1, 2));
  for (Index k = 2; k <= 8; ++k) {
    auto sol = solve_S(g, q, 8);
    sol.h[k] += QComplex(make_rational(1, 11));
    auto r = residual_S(sol, g);
    for (Index j = 0; j < k; ++j) CHECK(r[j].is_zero());
    CHECK_FALSE(r[k].is_zero());
  }
}

TEST_CASE("E_q mode identity") {
  CFourier e1 = CFourier::single_mode(1, 2);
  auto u = apply_Eq(e1, Complex(2.0));
  CHECK(std::abs(u[1] - Complex(1.0)) < 1e-15);

  CFourier c(2);
  c[0] = 5.0;
  CHECK(apply_Eq(c, Complex(0.3)).max_mode() == 2);
  CHECK(apply_Eq(c, Complex(0.3))[0] == Complex(0.0));

  series::FourierSeries<QComplex> v(6);
  for (Index k = -6; k <= 6; ++k) v[k] = QComplex(make_rational(k + 7, 3), make_rational(2 * k - 1, 5));
  for (int trial = 0; trial < 20; ++trial) {
    QComplex q = random_q();
    if (q.is_zero()) continue;
    auto w = apply_Eq(v, q);
    for (Index k = -6; k <= 6; ++k) {
      if (k == 0) {
        CHECK(w[0].is_zero());
        continue;
      }
      QComplex qk = k > 0 ? ipow(q, static_cast<unsigned long>(k)) : ipow(QComplex(1) / q, static_cast<unsigned long>(-k));
      CHECK((qk - QComplex(1)) * w[k] == v[k]);
    }
  }
}

TEST_CASE("property: projection decomposition of E_q") {
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 40; ++trial) {
    CFourier v(7);
    for (Index k = -7; k <= 7; ++k) v[k] = Complex(normal(testgen::rng()), normal(testgen::rng()));
    double radius = trial % 2 == 0 ? testgen::uniform_real(0.1, 0.9) : testgen::uniform_real(1.1, 5.0);
    Complex q = std::polar(radius, testgen::uniform_real(0.0, 2 * std::numbers::pi));
    auto direct = apply_Eq(v, q);
    auto split = apply_Eq_decomposed(v, q);
    for (Index k = -7; k <= 7; ++k) CHECK(std::abs(direct[k] - split[k]) <= 1e-12 * (1.0 + std::abs(direct[k])));
  }
}

TEST_CASE("E_q norm bound constants and probe") {
  CHECK(std::abs(eq_norm_bound(1.0, 1.0) - 2.0056198106034943) < 1e-14);
  CHECK(std::abs(eq_norm_bound(1.0, 40.0) - (2.0 + 1.0 / std::expm1(2 * std::numbers::pi))) < 1e-14);

  std::mt19937_64 rng(7);
  Complex q = rotation(Complex(0.3, 1.05));
  auto probe = operator_norm_probe(q, 1.0, 1.0, 50, rng);
  CHECK(probe.within_bound);
  // single mode: ratio 1/|q - 1|
  std::mt19937_64 rng1(1);
  auto single = operator_norm_probe(q, 1.0, 1.0, 1, rng1);
  CHECK(std::abs(single.max_ratio - 1.0 / std::abs(q - 1.0)) < 1e-9);

  auto outside = operator_norm_probe(1.0 / std::conj(q), 1.0, 1.0, 50, rng);
  CHECK(outside.within_bound);
  CHECK_THROWS(operator_norm_probe(rotation(Complex(0.3, 0.2)), 1.0, 1.0, 5, rng));
}

TEST_CASE("solver constants") {
  auto g = cos_modes(1.0);
  auto k = constants(1.0, 1.0, g);
  CHECK(std::abs(k.C - 2 * std::cosh(2 * std::numbers::pi)) < 1e-9 * k.C);
  CHECK(std::abs(k.r_prime - 1.0 / (8 * k.E * k.C)) < 1e-18);
  auto k3 = constants(1.0, 1.0, Complex(3.0) * g);
  CHECK(std::abs(k3.C - 3 * k.C) < 1e-9 * k3.C);
  CHECK(std::abs(k3.r_prime - k.r_prime / 3) < 1e-12 * k.r_prime);
}

TEST_CASE("circle map solver") {
  CircleOptions opts;
  opts.R = 1.0;
  opts.Lambda = 0.5;
  auto g = cos_modes(1.0);
  Complex q = rotation(Complex(0.61803398874989485, 0.6));

  auto trivial = solve_C(g, q, 0.0, opts);
  CHECK(trivial.iterations == 0);
  CHECK(trivial.beta == Complex(0.0));

  const double r_prime = constants(1.0, 0.5, g).r_prime;
  auto sol = solve_C(g, q, r_prime / 2, opts);
  CHECK(sol.certified);
  CHECK(sol.final_defect < 1e-10);
  for (size_t n = 1; n < sol.history.size(); ++n) CHECK(sol.history[n].ratio <= 0.52);
  for (const auto& rec : sol.history) CHECK(rec.norm <= r_prime * sol.constants.C);
  CHECK(std::abs(sol.beta - sol.v[0]) == 0.0);

  CHECK_THROWS_AS(solve_C(g, q, 2 * r_prime, opts), NonContraction);
  opts.certify = false;
  auto loose = solve_C(g, q, 2 * r_prime, opts);
  CHECK_FALSE(loose.certified);

  // exterior multiplier
  opts.certify = true;
  auto ext = solve_C(g, 1.0 / std::conj(q), Complex(0, r_prime / 3), opts);
  CHECK(ext.final_defect < 1e-10);
}

TEST_CASE("circle map second-order expansion") {
  CircleOptions opts;
  opts.R = 1.0;
  opts.Lambda = 0.5;
  auto g = cos_modes(1.0);
  Complex q = rotation(Complex(0.2, 0.7));
  const double eps = 1e-4;
  auto sol = solve_C(g, q, eps, opts);
  // v ~ eps g + eps^2 g' E_q g with g' = 2 pi i (e_1 - e_{-1})
  auto Eg = apply_Eq(g, q);
  CFourier approx(4);
  approx[1] = eps;
  approx[-1] = eps;
  Complex two_pi_i(0, 2 * std::numbers::pi);
  for (Index a : {1L, -1L})
    for (Index b : {1L, -1L}) approx[a + b] += eps * eps * two_pi_i * static_cast<double>(a) * Eg[b];
  double err = 0.0, size = 0.0;
  for (Index k = -4; k <= 4; ++k) {
    err = std::max(err, std::abs(sol.v.coeff(k) - approx.coeff(k)));
    size = std::max(size, std::abs(sol.v.coeff(k)));
  }
  CHECK(err / size < 10 * eps);
  CHECK(err < 1e-9);
}
