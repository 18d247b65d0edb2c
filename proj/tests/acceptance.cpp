// Acceptance run: one PASS/FAIL line per criterion, nonzero exit when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "generators.hpp"
#include "sdlab/arith_sets.hpp"
#include "sdlab/contfrac.hpp"
#include "sdlab/domains.hpp"
#include "sdlab/lab.hpp"
#include "sdlab/solvers.hpp"

using namespace sdlab;
using series::CFourier;
using series::Index;
using series::PowerSeries;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void run(const std::string& name, double limit_s, const std::function<Outcome()>& body) {
  auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool in_time = limit_s <= 0 || secs < limit_s;
  bool ok = out.ok && in_time;
  if (!ok) ++failures;
  std::ostringstream line;
  line << (ok ? "PASS " : "FAIL ") << name << ": " << out.detail;
  line.precision(3);
  line << " (" << secs << " s";
  if (limit_s > 0) line << ", limit " << limit_s << " s" << (in_time ? "" : ", too slow");
  line << ")";
  std::puts(line.str().c_str());
  std::fflush(stdout);
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

using QSeries = PowerSeries<QComplex>;

QComplex random_q() {
  for (;;) {
    QComplex q{make_rational(testgen::uniform(-20, 20), testgen::uniform(1, 7)),
               make_rational(testgen::uniform(-20, 20), testgen::uniform(1, 7))};
    // 0 and the roots of unity with rational parts
    if (q.is_zero() || q == QComplex(1) || q == QComplex(-1) || q == QComplex(0, 1) || q == QComplex(0, -1))
      continue;
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

Complex rotation(Complex alpha) { return std::exp(Complex(0, 2 * std::numbers::pi) * alpha); }

CFourier cos_modes(double R) {
  CFourier g(1, 2 * R);
  g[1] = 1.0;
  g[-1] = 1.0;
  return g;
}

Outcome cf_exactness() {
  size_t bad = 0, indices = 0;
  for (int i = 0; i < 1000; ++i) {
    Rational x = testgen::rational(1000000);
    auto cf = contfrac::cf_expand(x, 200);
    bool ok = cf.exhausted && cf.conv.back().value() == x && contfrac::evaluate(cf.a, cf.last_index()) == x;
    for (size_t k = 0; k < cf.conv.size(); ++k, ++indices) {
      BigInt prev_n = k == 0 ? BigInt(1) : cf.conv[k - 1].n;
      BigInt prev_m = k == 0 ? BigInt(0) : cf.conv[k - 1].m;
      if (cf.conv[k].m * prev_n - cf.conv[k].n * prev_m != (k % 2 == 0 ? 1 : -1)) ok = false;
    }
    if (!ok) ++bad;
  }
  return {bad == 0, "1000 rationals, " + std::to_string(indices) + " Bezout indices, " + std::to_string(bad) +
                        " mismatches"};
}

Outcome best_approximation() {
  std::vector<contfrac::CfSource> sources{contfrac::Surd::sqrt_of(2), contfrac::Surd::golden()};
  for (int i = 0; i < 20; ++i) sources.emplace_back(testgen::surd());
  std::mt19937_64 rng(20240611);
  size_t checked = 0, gaps = 0, bad_sources = 0;
  for (const auto& src : sources) {
    auto rep = lab::verify_best_approximation(src, 20, 2000, 200, rng, 256);
    checked += rep.checked;
    gaps += rep.gaps.entries.size();
    if (!rep.pass()) ++bad_sources;
  }
  return {bad_sources == 0, std::to_string(sources.size()) + " numbers at depth 20, " + std::to_string(checked) +
                                " candidates, " + std::to_string(gaps) + " gap entries, " +
                                std::to_string(bad_sources) + " failing"};
}

Outcome measure_bound() {
  bool ok = true;
  std::string worst;
  double worst_share = 0.0;
  for (long M : {10L, 50L, 100L}) {
    for (Rational tau : {make_rational(1, 2), Rational(1)}) {
      auto set = arith::complement_C(Rational(M), tau, 500);
      RealInterval total = RealInterval(set.exact_measure()) + set.tail_measure_bound();
      RealInterval bound = arith::measure_bound_C(Rational(M), tau);
      if (!total.certainly_lt(bound)) ok = false;
      double share = total.hi() / bound.lo();
      if (share > worst_share) {
        worst_share = share;
        worst = "M=" + std::to_string(M) + " tau=" + to_string(tau);
      }
    }
  }
  return {ok, "6 parameter pairs, largest measure/bound ratio " + fmt(worst_share) + " at " + worst};
}

Outcome golden_rank_measure() {
  size_t passed = 0, total = 0;
  std::string failed;
  for (Rational gamma : {make_rational(1, 30), make_rational(1, 100), make_rational(1, 1000)}) {
    for (size_t k = 2; k <= 6; ++k) {
      ++total;
      unsigned long m_max = 400;
      auto rep = arith::rank_measure_check(gamma, Rational(1), k, m_max);
      while (rep.inconclusive && rep.suggested_m_max > m_max && rep.suggested_m_max <= 20000) {
        m_max = rep.suggested_m_max;
        rep = arith::rank_measure_check(gamma, Rational(1), k, m_max);
      }
      if (rep.pass && rep.structural_ok)
        ++passed;
      else
        failed += " gamma=" + to_string(gamma) + ",k=" + std::to_string(k);
    }
  }
  return {passed == total, std::to_string(passed) + "/" + std::to_string(total) +
                               " (gamma, k) pairs certified with structural checks" + failed};
}

Outcome rank_law() {
  size_t bad = 0;
  for (size_t k = 1; k <= 15; ++k) {
    Rational expected = make_rational(BigInt(1), contfrac::fibonacci(k + 1) * contfrac::fibonacci(k + 2));
    if (arith::golden_rank_interval(k).length() != expected) ++bad;
  }
  return {bad == 0, "k = 1..15, " + std::to_string(bad) + " mismatches"};
}

Outcome residuals() {
  size_t bad_l = 0, bad_s = 0;
  for (int trial = 0; trial < 50; ++trial) {
    QComplex q = random_q();
    auto gl = random_g(30);
    if (!all_zero(solvers::residual_L(solvers::solve_L(gl, q, 30), gl))) ++bad_l;
    auto gs = random_g(12);
    if (!all_zero(solvers::residual_S(solvers::solve_S(gs, q, 12), gs))) ++bad_s;
  }
  return {bad_l == 0 && bad_s == 0, "50 multipliers, nonzero residuals: L(N=30) " + std::to_string(bad_l) +
                                        ", S(N=12) " + std::to_string(bad_s)};
}

Outcome siegel_limits() {
  PowerSeries<RatFunc> g(8);
  for (Index k = 2; k <= 8; ++k) g[k] = RatFunc(make_rational(testgen::uniform(1, 5), testgen::uniform(1, 3)));
  bool poles = solvers::symbolic_poles_ok(solvers::solve_S(g, RatFunc::variable(), 8));

  auto gq = random_g(10);
  bool inverse = all_zero(solvers::inverse_defect(solvers::solve_S(gq, QComplex(0), 10), gq));

  auto inf = solvers::solve_S_at_infinity(gq, 10);
  bool identity = inf.h[1] == QComplex(1);
  for (Index k = 2; k <= 10; ++k) identity = identity && inf.h[k].is_zero();
  return {poles && inverse && identity, std::string("poles through k=8 ") + (poles ? "ok" : "bad") +
                                            ", q=0 inverse through order 10 " + (inverse ? "ok" : "bad") +
                                            ", q=infinity identity " + (identity ? "ok" : "bad")};
}

Outcome eq_operator() {
  series::FourierSeries<QComplex> v(6);
  for (Index k = -6; k <= 6; ++k) v[k] = QComplex(make_rational(k + 7, 3), make_rational(2 * k - 1, 5));
  bool identity = true;
  for (int trial = 0; trial < 20; ++trial) {
    QComplex q = random_q();
    auto w = solvers::apply_Eq(v, q);
    identity = identity && w[0].is_zero();
    for (Index k = -6; k <= 6; ++k) {
      if (k == 0) continue;
      QComplex qk = k > 0 ? ipow(q, static_cast<unsigned long>(k))
                          : ipow(QComplex(1) / q, static_cast<unsigned long>(-k));
      identity = identity && (qk - QComplex(1)) * w[k] == v[k];
    }
  }

  std::mt19937_64 rng(20240611);
  bool probes = true;
  double worst = 0.0;
  for (double R : {0.5, 1.0}) {
    for (double Lambda : {0.25, 1.0}) {
      Complex q = rotation(Complex(0.3, 1.05 * Lambda));
      for (Complex qq : {q, 1.0 / std::conj(q)}) {
        auto p = solvers::operator_norm_probe(qq, R, Lambda, 200, rng);
        probes = probes && p.within_bound && p.trials == 200;
        worst = std::max(worst, p.max_ratio / p.bound);
      }
    }
  }
  return {identity && probes, std::string("exact mode identity ") + (identity ? "ok" : "bad") +
                                  ", 8 probes of 200 trials, largest ratio/bound " + fmt(worst)};
}

Outcome contraction() {
  solvers::CircleOptions opts;
  opts.R = 1.0;
  opts.Lambda = 0.5;
  auto g = cos_modes(1.0);
  Complex q = rotation(Complex(0.61803398874989485, 0.6));
  const double r_prime = solvers::constants(1.0, 0.5, g).r_prime;
  auto sol = solvers::solve_C(g, q, r_prime / 2, opts);
  double worst_ratio = 0.0;
  for (size_t n = 1; n < sol.history.size(); ++n) worst_ratio = std::max(worst_ratio, sol.history[n].ratio);
  bool norms = true;
  for (const auto& rec : sol.history) norms = norms && rec.norm <= r_prime * sol.constants.C;
  double defect = solvers::conjugacy_defect(g, sol.u, q, sol.beta, sol.eps, 512);
  bool ok = sol.certified && worst_ratio <= 0.52 && norms && defect < 1e-10;

  // second order: v ~ eps g + eps^2 g'(theta) E_q g
  Complex q2 = rotation(Complex(0.2, 0.7));
  const double eps = 1e-4;
  auto small = solvers::solve_C(g, q2, eps, opts);
  auto Eg = solvers::apply_Eq(g, q2);
  CFourier approx(4);
  approx[1] = eps;
  approx[-1] = eps;
  Complex two_pi_i(0, 2 * std::numbers::pi);
  for (Index a : {1L, -1L})
    for (Index b : {1L, -1L}) approx[a + b] += eps * eps * two_pi_i * static_cast<double>(a) * Eg[b];
  double err = 0.0, size = 0.0;
  for (Index k = -4; k <= 4; ++k) {
    err = std::max(err, std::abs(small.v.coeff(k) - approx.coeff(k)));
    size = std::max(size, std::abs(small.v.coeff(k)));
  }
  double rel = err / size;
  ok = ok && rel < 10 * eps;
  return {ok, std::to_string(sol.iterations) + " iterations, worst step ratio " + fmt(worst_ratio) +
                  ", norms within r'C " + (norms ? "yes" : "no") + ", defect " + fmt(defect) +
                  ", second-order relative error " + fmt(rel)};
}

Outcome coherence() {
  lab::ExperimentConfig cfg;
  series::CSeries g(24);
  g[2] = 1.0;
  lab::BoundaryPoint point{contfrac::Surd::golden(), arith::SetKind::L, Rational(1), Rational(1)};
  auto rep = lab::pseudocontinuation_demo(lab::Problem::L, point, 3, 12, g, cfg);
  bool ok = rep.monotone && rep.final_ratio < 1e-4;
  return {ok, std::string("monotone ") + (rep.monotone ? "yes" : "no") + ", final/initial gap " +
                  fmt(rep.final_ratio) + " (required < 1e-4), r_cmp " + fmt(rep.r_cmp)};
}

Outcome domain_geometry() {
  auto lip_set = arith::complement_C(Rational(10), Rational(1), 30);
  domains::DistanceProfile phi(lip_set);
  size_t lip_bad = 0;
  for (int i = 0; i < 10000; ++i) {
    Rational a = make_rational(testgen::uniform(0, 1000000), 1000000);
    Rational b = make_rational(testgen::uniform(0, 1000000), 1000000);
    if (abs(phi(a) - phi(b)) > abs(a - b)) ++lip_bad;
  }

  auto set = arith::complement_C(Rational(12), make_rational(1, 2), 25);
  auto dom = domains::build_domain(set);
  size_t circle_bad = 0;
  for (int i = 0; i < 10000; ++i) {
    Rational x = make_rational(testgen::uniform(1, 999999), 1000000);
    if (dom.contains_rotation(x, Rational(0)) == set.contains(x)) ++circle_bad;
  }

  auto dc = arith::dc_complement(make_rational(1, 20), Rational(1), 12);
  auto tiled = domains::build_domain(dc);
  const double top = to_double(tiled.profile().max_value());
  size_t tile_bad = 0;
  for (int i = 0; i < 10000; ++i) {
    double x = testgen::uniform_real(0.0, 1.0);
    double y = testgen::uniform_real(1e-9, top);
    int hits = 0;
    for (const auto& d : tiled.diamonds()) hits += d.contains(x, y) ? 1 : 0;
    if (hits != (tiled.profile()(x) > y ? 1 : 0)) ++tile_bad;
  }
  return {lip_bad + circle_bad + tile_bad == 0, "violations: Lipschitz " + std::to_string(lip_bad) +
                                                    ", circle membership " + std::to_string(circle_bad) +
                                                    ", diamond tiling " + std::to_string(tile_bad) +
                                                    " (10000 samples each)"};
}

}  // namespace

int main() {
  run("continued-fraction exactness", 5, cf_exactness);
  run("best-approximation law", 10, best_approximation);
  run("exclusion measure bound", 30, measure_bound);
  run("Diophantine measure on golden rank intervals", 60, golden_rank_measure);
  run("rank-interval length law", 0, rank_law);
  run("exact residual identities", 60, residuals);
  run("Siegel limit cases", 0, siegel_limits);
  run("E_q operator", 30, eq_operator);
  run("contraction certificate", 30, contraction);
  run("non-tangential coherence", 30, coherence);
  run("domain geometry", 10, domain_geometry);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
