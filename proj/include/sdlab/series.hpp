#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sdlab/numeric.hpp"
#include "sdlab/scalars.hpp"

namespace sdlab::series {

using Index = Eigen::Index;

template <class S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

template <class S>
Vector<S> zeros(Index n) {
  Vector<S> v(n);
  for (Index i = 0; i < n; ++i) v[i] = S(0);
  return v;
}

/// Truncated power series c_0 + c_1 z + ... + c_N z^N.
template <class S>
class PowerSeries {
 public:
  PowerSeries() : PowerSeries(0) {}
  explicit PowerSeries(Index order) : c_(zeros<S>(order + 1)) {}
  explicit PowerSeries(Vector<S> c) : c_(std::move(c)) {
    if (c_.size() == 0) c_ = zeros<S>(1);
  }

  static PowerSeries identity(Index order) {
    PowerSeries p(order);
    if (order >= 1) p[1] = S(1);
    return p;
  }
  static PowerSeries monomial(Index k, const S& coeff, Index order) {
    PowerSeries p(order);
    if (k <= order) p[k] = coeff;
    return p;
  }

  Index order() const { return c_.size() - 1; }
  S& operator[](Index k) { return c_[k]; }
  const S& operator[](Index k) const { return c_[k]; }
  S coeff(Index k) const { return k >= 0 && k <= order() ? c_[k] : S(0); }
  const Vector<S>& coeffs() const { return c_; }

  /// Radius of the disk the series is meant to represent; 0 when unknown.
  double radius_hint() const { return radius_; }
  void set_radius_hint(double r) { radius_ = r; }
  /// Set when an operation dropped nonzero terms beyond the order.
  bool discarded_tail() const { return discarded_; }
  void set_discarded_tail(bool f) { discarded_ = f; }

  PowerSeries truncated(Index n) const {
    PowerSeries p(std::min(n, order()));
    for (Index k = 0; k <= p.order(); ++k) p[k] = c_[k];
    p.radius_ = radius_;
    p.discarded_ = discarded_;
    for (Index k = p.order() + 1; k <= order(); ++k)
      if (!is_exact_zero(c_[k])) p.discarded_ = true;
    return p;
  }

  template <class T, class F>
  PowerSeries<T> map(F&& f) const {
    Vector<T> out(c_.size());
    for (Index k = 0; k < c_.size(); ++k) out[k] = f(c_[k]);
    PowerSeries<T> p(std::move(out));
    p.set_radius_hint(radius_);
    p.set_discarded_tail(discarded_);
    return p;
  }

  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
    Index n = std::min(a.order(), b.order());
    PowerSeries r(n);
    for (Index k = 0; k <= n; ++k) r[k] = a[k] + b[k];
    r.discarded_ = a.discarded_ || b.discarded_ || a.order() != b.order();
    return r;
  }
  friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
    Index n = std::min(a.order(), b.order());
    PowerSeries r(n);
    for (Index k = 0; k <= n; ++k) r[k] = a[k] - b[k];
    r.discarded_ = a.discarded_ || b.discarded_ || a.order() != b.order();
    return r;
  }
  friend PowerSeries operator*(const S& s, const PowerSeries& a) {
    PowerSeries r(a.order());
    for (Index k = 0; k <= a.order(); ++k) r[k] = s * a[k];
    r.discarded_ = a.discarded_;
    return r;
  }
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    Index n = std::min(a.order(), b.order());
    PowerSeries r(n);
    bool dropped = a.discarded_ || b.discarded_ || a.order() != b.order();
    for (Index i = 0; i <= a.order(); ++i) {
      if (is_exact_zero(a[i])) continue;
      for (Index j = 0; j <= b.order(); ++j) {
        if (i + j > n) {
          if (!is_exact_zero(b[j])) dropped = true;
          break;
        }
        r[i + j] += a[i] * b[j];
      }
    }
    r.discarded_ = dropped;
    return r;
  }

 private:
  Vector<S> c_;
  double radius_ = 0.0;
  bool discarded_ = false;
};

/// outer(inner(z)) truncated at the order of `inner`; `outer` is used as the polynomial it
/// stores. Throws std::invalid_argument when inner has a nonzero constant term.
template <class S>
PowerSeries<S> ps_compose(const PowerSeries<S>& outer, const PowerSeries<S>& inner) {
  if (!is_exact_zero(inner[0])) throw std::invalid_argument("ps_compose: inner series has a constant term");
  Index n = inner.order();
  PowerSeries<S> acc(n);
  for (Index k = outer.order(); k >= 0; --k) {
    acc = acc * inner;
    acc[0] += outer[k];
  }
  acc.set_discarded_tail(outer.discarded_tail() || inner.discarded_tail());
  acc.set_radius_hint(inner.radius_hint());
  return acc;
}

template <class S, class Z>
Z ps_eval(const PowerSeries<S>& p, const Z& z) {
  Z acc(0);
  for (Index k = p.order(); k >= 0; --k) acc = acc * z + Z(p[k]);
  return acc;
}

// ---------------------------------------------------------------------------

/// Thrown by evaluation outside the declared annulus.
struct OutOfAnnulus : std::domain_error {
  using std::domain_error::domain_error;
};

/// Two-sided truncated Fourier series sum_{|k|<=N} v_k e^{2 pi i k theta}.
template <class S>
class FourierSeries {
 public:
  FourierSeries() : FourierSeries(0) {}
  explicit FourierSeries(Index max_mode, double width = 0.0) : c_(zeros<S>(2 * max_mode + 1)), width_(width) {}

  static FourierSeries single_mode(Index k, Index max_mode, double width = 0.0, const S& coeff = S(1)) {
    FourierSeries v(std::max(max_mode, k < 0 ? -k : k), width);
    v[k] = coeff;
    return v;
  }

  Index max_mode() const { return (c_.size() - 1) / 2; }
  S& operator[](Index k) { return c_[k + max_mode()]; }
  const S& operator[](Index k) const { return c_[k + max_mode()]; }
  S coeff(Index k) const { return (k >= -max_mode() && k <= max_mode()) ? (*this)[k] : S(0); }
  S mean() const { return (*this)[0]; }
  const Vector<S>& coeffs() const { return c_; }

  /// Full width of the annulus: the series is declared holomorphic on |Im theta| < width/2.
  /// 0 means undeclared (evaluation is then unrestricted).
  double width() const { return width_; }
  void set_width(double w) { width_ = w; }
  /// B with |v_k| <= B e^{-pi |k| width} when known.
  std::optional<double> decay_bound() const { return decay_; }
  void set_decay_bound(std::optional<double> b) { decay_ = b; }
  /// Bound on the coefficient error from sampling (0 for exact data).
  double aliasing_bound() const { return aliasing_; }
  void set_aliasing_bound(double a) { aliasing_ = a; }

  FourierSeries resized(Index max_mode) const {
    FourierSeries r(max_mode, width_);
    for (Index k = -std::min(max_mode, this->max_mode()); k <= std::min(max_mode, this->max_mode()); ++k)
      r[k] = (*this)[k];
    r.decay_ = decay_;
    r.aliasing_ = aliasing_;
    return r;
  }

  template <class T, class F>
  FourierSeries<T> map(F&& f) const {
    FourierSeries<T> r(max_mode(), width_);
    for (Index k = -max_mode(); k <= max_mode(); ++k) r[k] = f((*this)[k]);
    return r;
  }

  friend FourierSeries operator+(const FourierSeries& a, const FourierSeries& b) {
    FourierSeries r(std::max(a.max_mode(), b.max_mode()), std::min(a.width_, b.width_));
    for (Index k = -r.max_mode(); k <= r.max_mode(); ++k) r[k] = a.coeff(k) + b.coeff(k);
    r.aliasing_ = a.aliasing_ + b.aliasing_;
    return r;
  }
  friend FourierSeries operator-(const FourierSeries& a, const FourierSeries& b) {
    FourierSeries r(std::max(a.max_mode(), b.max_mode()), std::min(a.width_, b.width_));
    for (Index k = -r.max_mode(); k <= r.max_mode(); ++k) r[k] = a.coeff(k) - b.coeff(k);
    r.aliasing_ = a.aliasing_ + b.aliasing_;
    return r;
  }
  friend FourierSeries operator*(const S& s, const FourierSeries& a) {
    FourierSeries r(a.max_mode(), a.width_);
    for (Index k = -a.max_mode(); k <= a.max_mode(); ++k) r[k] = s * a[k];
    return r;
  }

 private:
  Vector<S> c_;
  double width_ = 0.0;
  std::optional<double> decay_;
  double aliasing_ = 0.0;
};

struct Projection {
  enum class Kind { plus, minus, mode };
  Kind kind = Kind::plus;
  Index k = 0;

  static Projection plus() { return {Kind::plus, 0}; }
  static Projection minus() { return {Kind::minus, 0}; }
  static Projection mode(Index k) { return {Kind::mode, k}; }
};

/// Coefficient masking: plus keeps k >= 1, minus keeps k <= -1, mode(k) keeps k.
template <class S>
FourierSeries<S> project(const FourierSeries<S>& v, const Projection& p) {
  FourierSeries<S> r(v.max_mode(), v.width());
  for (Index k = -v.max_mode(); k <= v.max_mode(); ++k) {
    bool keep = (p.kind == Projection::Kind::plus && k >= 1) || (p.kind == Projection::Kind::minus && k <= -1) ||
                (p.kind == Projection::Kind::mode && k == p.k);
    if (keep) r[k] = v[k];
  }
  return r;
}

// ---------------------------------------------------------------------------
// Floating-point evaluation and norms.

using CSeries = PowerSeries<Complex>;
using CFourier = FourierSeries<Complex>;

/// sum v_k e^{2 pi i k theta}; throws OutOfAnnulus when |Im theta| > width/2.
Complex fs_eval(const CFourier& v, Complex theta);

struct EvalWithError {
  Complex value;
  double tail = 0.0;  // bound on omitted modes from the decay law (+inf when not summable)
};
EvalWithError fs_eval_with_error(const CFourier& v, Complex theta);

/// Trapezoid-rule coefficients v_k, |k| <= N, from `grid` samples on Im theta = 0. When a strip
/// width and a bound on f over it are declared, the aliasing error bound is recorded.
CFourier fs_coeffs_from_samples(const std::function<Complex(double)>& f, Index N, Index grid,
                                std::optional<double> width = std::nullopt,
                                std::optional<double> bound = std::nullopt);
/// Same, with the samples already computed at theta_j = j / samples.size().
CFourier fs_coeffs_from_values(const std::vector<Complex>& samples, Index N);

/// sum |v_k| e^{2 pi |k| rho}: an upper bound for the sup norm on |Im theta| <= rho.
double coefficient_norm_bound(const CFourier& v, double rho);

struct NormEstimate {
  double value = 0.0;       // maximum on the refined grid
  double coarse = 0.0;      // maximum on the base grid
  double refinement = 0.0;  // value - coarse
};

/// Sup norm on the closed strip |Im theta| <= rho by maximizing over the two boundary lines.
NormEstimate sup_norm_strip(const CFourier& v, double rho, Index grid = 256);
/// Sup norm on the closed disk |z| <= r by maximizing over the circle |z| = r.
NormEstimate sup_norm_disk(const CSeries& p, double r, Index grid = 256);

/// Constant 2 + 1/(e^{2 pi R} - 1) bounding the half-projections on the closed strip of width R.
double half_projection_bound(double R);

}  // namespace sdlab::series
