#pragma once

#include <string>
#include <vector>

#include "sdlab/numeric.hpp"

namespace sdlab {

/// Dense univariate polynomial over Q in the multiplier q; coefficients low degree first,
/// no trailing zeros (the zero polynomial has no coefficients).
class Poly {
 public:
  Poly() = default;
  Poly(int c) : Poly(Rational(c)) {}
  Poly(const Rational& c);
  explicit Poly(std::vector<Rational> coeffs);

  static Poly variable();
  /// q^j - 1.
  static Poly cyclic(unsigned j);

  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }
  Rational operator[](size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

  QComplex eval(const QComplex& q) const;
  Complex eval(const Complex& q) const;
  Poly monic() const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// Euclidean division a = quot * b + rem.
  static void divmod(const Poly& a, const Poly& b, Poly& quot, Poly& rem);
  /// Monic greatest common divisor.
  static Poly gcd(Poly a, Poly b);

  std::string to_string() const;

 private:
  std::vector<Rational> c_;
  void trim();
};

/// Reduced rational function num/den in q with monic denominator.
class RatFunc {
 public:
  RatFunc() : num_(0), den_(1) {}
  RatFunc(int c) : num_(c), den_(1) {}
  RatFunc(const Rational& c) : num_(c), den_(1) {}
  RatFunc(const Poly& p) : num_(p), den_(1) {}
  RatFunc(const Poly& num, const Poly& den);

  static RatFunc variable() { return RatFunc(Poly::variable()); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  QComplex eval(const QComplex& q) const { return num_.eval(q) / den_.eval(q); }
  Complex eval(const Complex& q) const { return num_.eval(q) / den_.eval(q); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& b) { return *this = *this + b; }
  RatFunc& operator*=(const RatFunc& b) { return *this = *this * b; }
  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  std::string to_string() const;

 private:
  Poly num_;
  Poly den_;
  void normalize();
};

/// True when `den` divides prod_{j<=max_order} (q^j - 1)^multiplicity, i.e. every pole is a
/// root of unity of order at most max_order.
bool poles_are_roots_of_unity(const Poly& den, unsigned max_order, unsigned multiplicity);

}  // namespace sdlab
