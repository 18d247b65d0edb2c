#pragma once

// Exact and outward-rounded scalar types shared by every module.
//
//   BigInt, Rational   GMP integers / reduced fractions
//   RealInterval       MPFR interval [lo, hi] with outward rounding
//   RationalInterval   exact rational enclosure
//   QComplex           complex number with exact rational parts

#include <gmpxx.h>
#include <mpfr.h>

#include <complex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sdlab {

using BigInt = mpz_class;
using Rational = mpq_class;
using Complex = std::complex<double>;

/// Process-wide default binary precision for RealInterval (128 bits unless changed).
int default_precision();
void set_default_precision(int bits);

/// Thrown when an interval comparison cannot be resolved at the current width.
struct Undecidable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rational make_rational(const BigInt& num, const BigInt& den);
/// Parses "p/q", an integer, or a finite decimal ("0.125", "-3e-2") into an exact rational.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
double to_double(const Rational& q);
Rational abs(const Rational& q);
BigInt floor_div(const BigInt& a, const BigInt& b);
BigInt floor(const Rational& q);
BigInt isqrt(const BigInt& n);
bool is_square(const BigInt& n);

// ---------------------------------------------------------------------------

class RealInterval {
 public:
  explicit RealInterval(int precision = default_precision());
  RealInterval(long v, int precision = default_precision());
  RealInterval(const Rational& q, int precision = default_precision());
  RealInterval(const Rational& lo, const Rational& hi, int precision = default_precision());
  static RealInterval from_double(double v, int precision = default_precision());

  RealInterval(const RealInterval& other);
  RealInterval(RealInterval&& other) noexcept;
  RealInterval& operator=(const RealInterval& other);
  RealInterval& operator=(RealInterval&& other) noexcept;
  ~RealInterval();

  int precision() const { return prec_; }
  double lo() const;  // rounded down to double
  double hi() const;  // rounded up to double
  double mid() const;
  double width() const;
  Rational lo_rational() const;  // exact value of the lower endpoint
  Rational hi_rational() const;
  bool contains_zero() const;
  bool is_finite() const;

  const mpfr_t& lo_raw() const { return lo_; }
  const mpfr_t& hi_raw() const { return hi_; }

  static RealInterval pi(int precision = default_precision());
  static RealInterval golden(int precision = default_precision());  // (1+sqrt5)/2
  static RealInterval infinity(int precision = default_precision());  // [+inf, +inf]
  static RealInterval hull(const RealInterval& a, const RealInterval& b);

  friend RealInterval operator+(const RealInterval& a, const RealInterval& b);
  friend RealInterval operator-(const RealInterval& a, const RealInterval& b);
  friend RealInterval operator*(const RealInterval& a, const RealInterval& b);
  friend RealInterval operator/(const RealInterval& a, const RealInterval& b);
  friend RealInterval operator-(const RealInterval& a);
  RealInterval& operator+=(const RealInterval& b) { return *this = *this + b; }

  friend RealInterval log(const RealInterval& a);
  friend RealInterval exp(const RealInterval& a);
  friend RealInterval sqrt(const RealInterval& a);
  friend RealInterval sinh(const RealInterval& a);
  friend RealInterval abs(const RealInterval& a);
  /// a^b for a > 0.
  friend RealInterval pow(const RealInterval& a, const RealInterval& b);
  /// Riemann zeta on real s > 1 (decreasing, so the enclosure is [zeta(s.hi), zeta(s.lo)]).
  friend RealInterval zeta(const RealInterval& s);

  // Certain comparisons: true only when every point of the enclosures satisfies them.
  bool certainly_lt(const RealInterval& b) const;
  bool certainly_le(const RealInterval& b) const;
  bool certainly_gt(const RealInterval& b) const { return b.certainly_lt(*this); }
  bool certainly_ge(const RealInterval& b) const { return b.certainly_le(*this); }

  std::string to_string(int digits = 20) const;
  /// Upper endpoint as a decimal string rounded upward.
  std::string hi_string(int digits = 20) const;

 private:
  int prec_;
  mpfr_t lo_;
  mpfr_t hi_;
  void init();
};

std::ostream& operator<<(std::ostream& os, const RealInterval& x);

// ---------------------------------------------------------------------------

/// Closed rational enclosure [lo, hi] with exact arithmetic.
struct RationalInterval {
  Rational lo;
  Rational hi;

  RationalInterval() = default;
  RationalInterval(const Rational& v) : lo(v), hi(v) {}
  RationalInterval(const Rational& l, const Rational& h);

  Rational width() const { return hi - lo; }
  bool contains(const Rational& v) const { return lo <= v && v <= hi; }

  friend RationalInterval operator+(const RationalInterval& a, const RationalInterval& b);
  friend RationalInterval operator-(const RationalInterval& a, const RationalInterval& b);
  friend RationalInterval operator*(const RationalInterval& a, const RationalInterval& b);
  friend RationalInterval operator*(const Rational& s, const RationalInterval& a);
  friend RationalInterval abs(const RationalInterval& a);
};

enum class Ordering3 { less, greater, unresolved };
/// Compares a and b; unresolved when the enclosures overlap.
Ordering3 compare(const RationalInterval& a, const RationalInterval& b);

// ---------------------------------------------------------------------------

/// Complex number with exact rational real and imaginary parts.
struct QComplex {
  Rational re;
  Rational im;

  QComplex() : re(0), im(0) {}
  QComplex(int v) : re(v), im(0) {}
  QComplex(const Rational& r) : re(r), im(0) {}
  QComplex(const Rational& r, const Rational& i) : re(r), im(i) {}

  bool is_zero() const { return re == 0 && im == 0; }
  Rational norm2() const { return re * re + im * im; }
  QComplex conj() const { return {re, -im}; }
  Complex to_complex() const { return {to_double(re), to_double(im)}; }

  friend QComplex operator+(const QComplex& a, const QComplex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend QComplex operator-(const QComplex& a, const QComplex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend QComplex operator-(const QComplex& a) { return {-a.re, -a.im}; }
  friend QComplex operator*(const QComplex& a, const QComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend QComplex operator/(const QComplex& a, const QComplex& b) {
    Rational d = b.norm2();
    if (d == 0) throw std::domain_error("QComplex: division by zero");
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  QComplex& operator+=(const QComplex& b) { return *this = *this + b; }
  QComplex& operator-=(const QComplex& b) { return *this = *this - b; }
  QComplex& operator*=(const QComplex& b) { return *this = *this * b; }
  QComplex& operator/=(const QComplex& b) { return *this = *this / b; }
  friend bool operator==(const QComplex& a, const QComplex& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const QComplex& a, const QComplex& b) { return !(a == b); }
};

std::ostream& operator<<(std::ostream& os, const QComplex& z);

/// Integer power by repeated squaring; works for any ring type with a unit constructor.
template <class T>
T ipow(T base, unsigned long e) {
  T acc(1);
  while (e) {
    if (e & 1UL) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

}  // namespace sdlab
