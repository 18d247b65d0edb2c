#pragma once

#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdlab/numeric.hpp"
#include "sdlab/polynomial.hpp"
#include "sdlab/scalars.hpp"
#include "sdlab/series.hpp"

namespace sdlab::solvers {

using series::FourierSeries;
using series::Index;
using series::PowerSeries;

/// A small divisor vanished (or fell below tolerance in floating point). `index` is the
/// coefficient or Fourier mode that needed it, `exponent` the power of q involved.
struct Resonance : std::runtime_error {
  long index;
  long exponent;
  Resonance(long k, long e, const std::string& what) : std::runtime_error(what), index(k), exponent(e) {}
};
struct NonContraction : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct AnnulusEscape : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Relative size below which a floating-point small divisor counts as a resonance.
inline constexpr double kResonanceTolerance = 1e-13;

namespace detail {

template <class S>
void check_divisor(const S& d, long index, long exponent, const char* who) {
  bool zero = is_exact_backend<S>::value ? is_exact_zero(d) : magnitude(d) <= kResonanceTolerance;
  if (zero)
    throw Resonance(index, exponent,
                    std::string(who) + ": resonance at k=" + std::to_string(index) + " (q^" +
                        std::to_string(exponent) + " = 1)");
}

template <class S>
void check_no_linear_part(const PowerSeries<S>& g, const char* who) {
  if (!is_exact_zero(g.coeff(0)) || !is_exact_zero(g.coeff(1)))
    throw std::invalid_argument(std::string(who) + ": g must start at z^2");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Linear (cohomological) problem h(qz) - q h(z) = q g(z).

template <class S>
struct LinearSolution {
  PowerSeries<S> h;
  S q;
  bool at_infinity = false;
  /// R e^{-3M} when the caller declares q in K_M; otherwise an empirical root-test radius.
  std::optional<double> radius_certificate;
  std::string certificate_note;
};

/// h_1 = 1, h_k = g_k / (q^{k-1} - 1).
template <class S>
LinearSolution<S> solve_L(const PowerSeries<S>& g, const S& q, Index N) {
  detail::check_no_linear_part(g, "solve_L");
  LinearSolution<S> sol{PowerSeries<S>(N), q, false, std::nullopt, {}};
  if (N >= 1) sol.h[1] = S(1);
  S qpow(1);
  for (Index k = 2; k <= N; ++k) {
    qpow = qpow * q;  // q^{k-1}
    S gk = g.coeff(k);
    if (is_exact_zero(gk)) continue;
    S d = qpow - S(1);
    detail::check_divisor(d, static_cast<long>(k), static_cast<long>(k - 1), "solve_L");
    sol.h[k] = gk / d;
  }
  return sol;
}

/// Limit q -> infinity: every h_k with k >= 2 vanishes.
template <class S>
LinearSolution<S> solve_L_at_infinity(const PowerSeries<S>& g, Index N) {
  detail::check_no_linear_part(g, "solve_L");
  return {PowerSeries<S>::identity(N), S(0), true, std::nullopt, {}};
}

/// r_k = h_k (q^k - q) - q g_k for k = 0..N.
template <class S>
PowerSeries<S> residual_L(const LinearSolution<S>& sol, const PowerSeries<S>& g) {
  const Index N = sol.h.order();
  PowerSeries<S> r(N);
  S qk(1);
  for (Index k = 0; k <= N; ++k) {
    r[k] = sol.h[k] * (qk - sol.q) - sol.q * g.coeff(k);
    qk = qk * sol.q;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Siegel problem h(qz) = q G(h(z)), G(w) = w + g(w).

template <class S>
struct SiegelSolution {
  PowerSeries<S> h;
  S q;
  bool at_infinity = false;
  Index order = 0;
  std::optional<double> radius_certificate;
  std::string certificate_note;
};

/// Coefficients from the recurrence h_k (q^{k-1} - 1) = sum_{j=2}^{k} g_j [z^k] h^j, h_1 = 1.
template <class S>
SiegelSolution<S> solve_S(const PowerSeries<S>& g, const S& q, Index N) {
  detail::check_no_linear_part(g, "solve_S");
  SiegelSolution<S> sol{PowerSeries<S>(N), q, false, N, std::nullopt, {}};
  if (N < 1) return sol;
  sol.h[1] = S(1);
  // powers[j][k] = [z^k] h^j, filled column by column as h_k becomes known
  std::vector<std::vector<S>> powers(static_cast<size_t>(N + 1), std::vector<S>(static_cast<size_t>(N + 1), S(0)));
  powers[1][1] = S(1);
  S qpow(1);
  for (Index k = 2; k <= N; ++k) {
    qpow = qpow * q;
    S acc(0);
    for (Index j = 2; j <= k; ++j) {
      // [z^k] h^j = sum_{i=1}^{k-j+1} h_i [z^{k-i}] h^{j-1}
      S c(0);
      for (Index i = 1; i <= k - j + 1; ++i) {
        const S& hi = sol.h[i];
        const S& lower = powers[static_cast<size_t>(j - 1)][static_cast<size_t>(k - i)];
        if (is_exact_zero(hi) || is_exact_zero(lower)) continue;
        c += hi * lower;
      }
      powers[static_cast<size_t>(j)][static_cast<size_t>(k)] = c;
      S gj = g.coeff(j);
      if (!is_exact_zero(gj) && !is_exact_zero(c)) acc += gj * c;
    }
    if (!is_exact_zero(acc)) {
      S d = qpow - S(1);
      detail::check_divisor(d, static_cast<long>(k), static_cast<long>(k - 1), "solve_S");
      sol.h[k] = acc / d;
    }
    powers[1][static_cast<size_t>(k)] = sol.h[k];
  }
  return sol;
}

/// Limit q -> infinity: the conjugacy reduces to the identity.
template <class S>
SiegelSolution<S> solve_S_at_infinity(const PowerSeries<S>& g, Index N) {
  detail::check_no_linear_part(g, "solve_S");
  return {PowerSeries<S>::identity(N), S(0), true, N, std::nullopt, {}};
}

/// G = z + g as a series of the same order.
template <class S>
PowerSeries<S> siegel_map(const PowerSeries<S>& g) {
  PowerSeries<S> G = g;
  if (G.order() >= 1) G[1] += S(1);
  return G;
}

/// Coefficients of h(qz) - q G(h(z)) through order N.
template <class S>
PowerSeries<S> residual_S(const SiegelSolution<S>& sol, const PowerSeries<S>& g) {
  const Index N = sol.h.order();
  PowerSeries<S> Gh = series::ps_compose(siegel_map(g), sol.h).truncated(N);
  PowerSeries<S> r(N);
  S qk(1);
  for (Index k = 0; k <= N; ++k) {
    r[k] = qk * sol.h[k] - sol.q * Gh.coeff(k);
    qk = qk * sol.q;
  }
  return r;
}

/// G(h(z)) - z, which vanishes when h is the functional inverse of G (the q = 0 solution).
template <class S>
PowerSeries<S> inverse_defect(const SiegelSolution<S>& sol, const PowerSeries<S>& g) {
  const Index N = sol.h.order();
  return series::ps_compose(siegel_map(g), sol.h).truncated(N) - PowerSeries<S>::identity(N);
}

/// Radius certificates recorded when q is declared in K_M: R e^{-3M} for the linear problem,
/// R e^{-(3+delta)M} for the Siegel problem.
double linear_radius(double R, double M);
double siegel_radius(double R, double M, double delta);

/// 1 / limsup |h_k|^{1/k}, estimated over the upper half of the coefficients (infinite for
/// polynomials).
double root_test_radius(const PowerSeries<Complex>& h);

/// True when each symbolic coefficient h_k has poles only at roots of unity of order <= k-1.
bool symbolic_poles_ok(const SiegelSolution<RatFunc>& sol);

// ---------------------------------------------------------------------------
// Circle-map problem: the operator E_q and the contraction iteration.

/// (E_q v)_k = v_k / (q^k - 1) for k != 0, mode 0 annihilated.
template <class S>
FourierSeries<S> apply_Eq(const FourierSeries<S>& v, const S& q) {
  if (is_exact_zero(q)) throw std::invalid_argument("apply_Eq: q = 0 leaves the negative modes undefined");
  FourierSeries<S> out(v.max_mode(), v.width());
  const Index N = v.max_mode();
  S qk(1);
  S qinv = S(1) / q;
  S qmk(1);
  for (Index k = 1; k <= N; ++k) {
    qk = qk * q;
    qmk = qmk * qinv;
    if (!is_exact_zero(v[k])) {
      S d = qk - S(1);
      detail::check_divisor(d, static_cast<long>(k), static_cast<long>(k), "apply_Eq");
      out[k] = v[k] / d;
    }
    if (!is_exact_zero(v[-k])) {
      S d = qmk - S(1);
      detail::check_divisor(d, -static_cast<long>(k), -static_cast<long>(k), "apply_Eq");
      out[-k] = v[-k] / d;
    }
  }
  return out;
}

/// E_q through the projection decomposition -P+ v + sum_k q^k/(1-q^k)(-P_k + P_{-k}) v for
/// |q| < 1; for |q| > 1 the mode-reversed series is processed with 1/q.
FourierSeries<Complex> apply_Eq_decomposed(const FourierSeries<Complex>& v, Complex q);

/// 2 + 1/(e^{2 pi R} - 1) + sinh^{-2}(pi Lambda)/2.
double eq_norm_bound(double R, double Lambda);

/// Im alpha for q = e^{2 pi i alpha}, i.e. -log|q| / (2 pi).
double imag_rotation(Complex q);

struct EqResult {
  FourierSeries<Complex> u;
  std::optional<double> norm_bound;  // present when |Im alpha| > Lambda was declared and holds
  std::string warning;
};
/// apply_Eq with the optional norm certificate and a warning for q on the unit circle.
EqResult apply_Eq_certified(const FourierSeries<Complex>& v, Complex q, std::optional<double> R,
                            std::optional<double> Lambda);

struct NormProbe {
  double max_ratio = 0.0;
  double bound = 0.0;
  double grid_slack = 0.0;  // largest relative grid-refinement correction seen
  int trials = 0;
  bool within_bound = false;  // max_ratio <= bound * (1 + grid slack allowance)
};

/// Largest observed sup(E_q v)/sup(v) over S_{R/2} for random band-limited v.
NormProbe operator_norm_probe(Complex q, double R, double Lambda, int trials, std::mt19937_64& rng,
                              Index band = 8, Index grid = 256, double slack = 0.01);

struct SolverConstants {
  double R = 0.0;
  double Lambda = 0.0;
  double E = 0.0;       // bound on the norm of E_q
  double C = 0.0;       // sup |g| on the closed strip of half-width R (boundary grid)
  double C_coefficient = 0.0;  // sum |g_k| e^{2 pi |k| R}
  double r_prime = 0.0;  // R / (8 E C)
};

SolverConstants constants(double R, double Lambda, const FourierSeries<Complex>& g, Index grid = 1024);

struct CircleOptions {
  double R = 1.0;
  double Lambda = 0.5;
  Index modes = 0;  // N_v; 0 selects 4 * (mode count of g)
  Index grid = 0;   // 0 selects 4 N_v + 1
  double tol = 1e-14;
  int max_iter = 200;
  bool certify = true;
  Index norm_grid = 256;
  Index defect_grid = 512;
};

struct IterationRecord {
  double step = 0.0;   // ||v^{n+1} - v^n|| on the closed strip of half-width R/2
  double ratio = 0.0;  // step / previous step (0 for the first)
  double norm = 0.0;   // ||v^{n+1}||
  double shift = 0.0;  // sup |E_q v^n| on the closed strip of half-width R/2
  double dropped = 0.0;  // sum of |c_k| over the truncated band N_v < |k| <= (grid - 1)/2
};

struct CircleSolution {
  FourierSeries<Complex> v;
  Complex beta;
  FourierSeries<Complex> u;
  Complex q;
  Complex eps;
  int iterations = 0;
  double final_defect = 0.0;
  double conjugacy_defect = 0.0;  // grid sup of |h(theta + alpha) - G(h(theta))|
  double dropped_mass = 0.0;
  bool certified = false;
  SolverConstants constants;
  std::vector<IterationRecord> history;
};

/// Fixed point of v -> eps g(theta + E_q v(theta)) by successive approximation from v = 0.
CircleSolution solve_C(const FourierSeries<Complex>& g, Complex q, Complex eps, const CircleOptions& opts = {});

/// sup over the real grid of |h(theta + alpha) - h(theta) - alpha + beta - eps g(h(theta))|.
double conjugacy_defect(const FourierSeries<Complex>& g, const FourierSeries<Complex>& u, Complex q, Complex beta,
                        Complex eps, Index grid);

}  // namespace sdlab::solvers
