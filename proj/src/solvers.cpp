#include "sdlab/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace sdlab::solvers {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Index highest_mode(const FourierSeries<Complex>& v) {
  for (Index k = v.max_mode(); k >= 1; --k)
    if (v[k] != Complex(0.0) || v[-k] != Complex(0.0)) return k;
  return 0;
}

}  // namespace

double linear_radius(double R, double M) { return R * std::exp(-3.0 * M); }

double siegel_radius(double R, double M, double delta) { return R * std::exp(-(3.0 + delta) * M); }

double root_test_radius(const PowerSeries<Complex>& h) {
  const Index N = h.order();
  double limsup = 0.0;
  for (Index k = std::max<Index>(2, N / 2); k <= N; ++k) {
    double a = std::abs(h[k]);
    if (a > 0.0) limsup = std::max(limsup, std::pow(a, 1.0 / static_cast<double>(k)));
  }
  return limsup == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / limsup;
}

bool symbolic_poles_ok(const SiegelSolution<RatFunc>& sol) {
  for (Index k = 2; k <= sol.h.order(); ++k) {
    const Poly& den = sol.h[k].den();
    unsigned order = static_cast<unsigned>(k - 1);
    if (!poles_are_roots_of_unity(den, order, static_cast<unsigned>(k))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

FourierSeries<Complex> apply_Eq_decomposed(const FourierSeries<Complex>& v, Complex q) {
  if (std::abs(q) > 1.0) {
    const Index N = v.max_mode();
    FourierSeries<Complex> reversed(N, v.width());
    for (Index k = -N; k <= N; ++k) reversed[k] = v[-k];
    FourierSeries<Complex> w = apply_Eq_decomposed(reversed, 1.0 / q);
    FourierSeries<Complex> out(N, v.width());
    for (Index k = -N; k <= N; ++k) out[k] = w[-k];
    return out;
  }
  if (std::abs(q) == 1.0) throw std::invalid_argument("apply_Eq_decomposed: |q| = 1");
  const Index N = v.max_mode();
  // -P+ v
  FourierSeries<Complex> out = Complex(-1.0) * series::project(v, series::Projection::plus());
  Complex qk = 1.0;
  for (Index k = 1; k <= N; ++k) {
    qk *= q;
    Complex c = qk / (1.0 - qk);
    out[k] -= c * v[k];
    out[-k] += c * v[-k];
  }
  return out;
}

double eq_norm_bound(double R, double Lambda) {
  double s = std::sinh(std::numbers::pi * Lambda);
  return 2.0 + 1.0 / std::expm1(kTwoPi * R) + 0.5 / (s * s);
}

double imag_rotation(Complex q) { return -std::log(std::abs(q)) / kTwoPi; }

EqResult apply_Eq_certified(const FourierSeries<Complex>& v, Complex q, std::optional<double> R,
                            std::optional<double> Lambda) {
  EqResult res{apply_Eq(v, q), std::nullopt, {}};
  double im = std::abs(imag_rotation(q));
  if (im == 0.0) {
    res.warning = "q on the unit circle: no norm certificate";
    return res;
  }
  if (R && Lambda && *Lambda > 0.0 && im > *Lambda) res.norm_bound = eq_norm_bound(*R, *Lambda);
  return res;
}

NormProbe operator_norm_probe(Complex q, double R, double Lambda, int trials, std::mt19937_64& rng, Index band,
                              Index grid, double slack) {
  if (!(std::abs(imag_rotation(q)) > Lambda))
    throw std::invalid_argument("operator_norm_probe: requires |Im alpha| > Lambda");
  NormProbe probe;
  probe.bound = eq_norm_bound(R, Lambda);
  probe.trials = trials;
  std::normal_distribution<double> normal(0.0, 1.0);
  const double rho = R / 2.0;
  for (int t = 0; t < trials; ++t) {
    FourierSeries<Complex> v(band, R);
    if (t == 0) {
      v[1] = 1.0;
    } else {
      Index top = 1 + static_cast<Index>(t % band);
      for (Index k = -top; k <= top; ++k) {
        if (k == 0 && t % 2 == 0) continue;
        // scale so every mode has unit size on the boundary lines
        double scale = std::exp(-std::numbers::pi * std::abs(static_cast<double>(k)) * R);
        v[k] = scale * Complex(normal(rng), normal(rng));
      }
    }
    FourierSeries<Complex> u = apply_Eq(v, q);
    auto nv = series::sup_norm_strip(v, rho, grid);
    auto nu = series::sup_norm_strip(u, rho, grid);
    if (nv.value == 0.0) continue;
    probe.max_ratio = std::max(probe.max_ratio, nu.value / nv.value);
    probe.grid_slack = std::max({probe.grid_slack, nv.refinement / nv.value, nu.refinement / std::max(nu.value, 1e-300)});
  }
  probe.within_bound = probe.max_ratio <= probe.bound * (1.0 + slack);
  return probe;
}

SolverConstants constants(double R, double Lambda, const FourierSeries<Complex>& g, Index grid) {
  if (!(R > 0.0) || !(Lambda > 0.0)) throw std::invalid_argument("constants: R and Lambda must be positive");
  SolverConstants k;
  k.R = R;
  k.Lambda = Lambda;
  k.E = eq_norm_bound(R, Lambda);
  k.C = series::sup_norm_strip(g, R, grid).value;
  k.C_coefficient = series::coefficient_norm_bound(g, R);
  k.r_prime = k.C > 0.0 ? R / (8.0 * k.E * k.C) : std::numeric_limits<double>::infinity();
  return k;
}

double conjugacy_defect(const FourierSeries<Complex>& g, const FourierSeries<Complex>& u, Complex q, Complex beta,
                        Complex eps, Index grid) {
  const Index N = u.max_mode();
  FourierSeries<Complex> shifted(N);
  Complex qk = 1.0, qmk = 1.0;
  shifted[0] = u[0];
  for (Index k = 1; k <= N; ++k) {
    qk *= q;
    qmk /= q;
    shifted[k] = u[k] * qk;
    shifted[-k] = u[-k] * qmk;
  }
  FourierSeries<Complex> gfree = g;
  gfree.set_width(0.0);
  double worst = 0.0;
  for (Index j = 0; j < grid; ++j) {
    double theta = static_cast<double>(j) / grid;
    Complex ut = series::fs_eval(u, theta);
    Complex lhs = series::fs_eval(shifted, theta) - ut + beta;
    Complex rhs = eps * series::fs_eval(gfree, Complex(theta) + ut);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

CircleSolution solve_C(const FourierSeries<Complex>& g_in, Complex q, Complex eps, const CircleOptions& opts) {
  const double R = opts.R;
  if (!(R > 0.0)) throw std::invalid_argument("solve_C: R must be positive");
  if (g_in.mean() != Complex(0.0)) throw std::invalid_argument("solve_C: g must have zero mean");
  if (g_in.width() > 0.0 && g_in.width() < 2.0 * R)
    throw std::invalid_argument("solve_C: g is declared on a strip narrower than S_R");
  FourierSeries<Complex> g = g_in;
  g.set_width(2.0 * R);

  const double im_alpha = std::abs(imag_rotation(q));
  if (opts.certify) {
    if (im_alpha == 0.0) throw std::invalid_argument("solve_C: certified mode needs |q| != 1");
    if (!(im_alpha > opts.Lambda)) throw std::invalid_argument("solve_C: certified mode needs |Im alpha| > Lambda");
  }

  CircleSolution sol;
  sol.q = q;
  sol.eps = eps;
  sol.constants = constants(R, opts.Lambda, g);
  const double r_prime = sol.constants.r_prime;
  sol.certified = im_alpha > opts.Lambda && std::abs(eps) < r_prime;
  if (opts.certify && !sol.certified)
    throw NonContraction("solve_C: |eps| = " + std::to_string(std::abs(eps)) + " is not below r' = " +
                         std::to_string(r_prime));

  const Index Ng = std::max<Index>(1, highest_mode(g));
  const Index Nv = opts.modes > 0 ? opts.modes : 4 * Ng;
  // twice the retained band, so the truncated modes N_v < |k| <= 2 N_v are measured
  const Index G = opts.grid > 0 ? opts.grid : 4 * Nv + 1;
  if (G < 2 * Nv + 1) throw std::invalid_argument("solve_C: grid must be at least 2 N_v + 1");
  const Index Gmodes = (G - 1) / 2;
  const double rho = R / 2.0;

  sol.v = FourierSeries<Complex>(Nv, R);
  sol.u = FourierSeries<Complex>(Nv, R);
  sol.beta = 0.0;
  if (eps == Complex(0.0)) return sol;

  double prev_step = 0.0;
  bool converged = false;
  for (int n = 0; n < opts.max_iter; ++n) {
    FourierSeries<Complex> u = apply_Eq(sol.v, q);
    IterationRecord rec;
    rec.shift = series::sup_norm_strip(u, rho, opts.norm_grid).value;
    if (sol.certified && rec.shift > R / 4.0)
      throw AnnulusEscape("solve_C: sup |E_q v| exceeds R/4 on the closed strip of half-width R/2");

    std::vector<Complex> samples(static_cast<size_t>(G));
    for (Index j = 0; j < G; ++j) {
      double theta = static_cast<double>(j) / G;
      Complex w = Complex(theta) + series::fs_eval(u, theta);
      if (std::abs(w.imag()) > R) throw AnnulusEscape("solve_C: theta + E_q v(theta) leaves S_R");
      samples[static_cast<size_t>(j)] = eps * series::fs_eval(g, w);
    }
    FourierSeries<Complex> full = series::fs_coeffs_from_values(samples, Gmodes);
    FourierSeries<Complex> next = full.resized(Nv);
    next.set_width(R);
    // measured on the real circle, like the conjugacy defect; strip weights e^{2 pi k rho}
    // would amplify round-off in the high modes
    for (Index k = Nv + 1; k <= Gmodes; ++k) rec.dropped += std::abs(full[k]) + std::abs(full[-k]);
    rec.step = series::sup_norm_strip(next - sol.v, rho, opts.norm_grid).value;
    rec.ratio = prev_step > 0.0 ? rec.step / prev_step : 0.0;
    rec.norm = series::sup_norm_strip(next, rho, opts.norm_grid).value;
    prev_step = rec.step;
    sol.v = next;
    sol.history.push_back(rec);
    sol.iterations = n + 1;
    sol.dropped_mass = rec.dropped;
    if (rec.step <= opts.tol) {
      converged = true;
      break;
    }
  }
  if (!converged) throw NoConvergence("solve_C: no convergence within " + std::to_string(opts.max_iter) + " iterations");

  sol.beta = sol.v.mean();
  sol.u = apply_Eq(sol.v, q);
  sol.conjugacy_defect = conjugacy_defect(g, sol.u, q, sol.beta, eps, opts.defect_grid);
  sol.final_defect = std::max(sol.conjugacy_defect, sol.dropped_mass);
  return sol;
}

}  // namespace sdlab::solvers
