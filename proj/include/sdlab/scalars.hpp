#pragma once

// Scalar adapters so that series and solvers can be instantiated on exact complex
// rationals, rational functions of q, and forward-mode dual numbers.

#include <Eigen/Core>

#include <cmath>
#include <complex>

#include "sdlab/numeric.hpp"
#include "sdlab/polynomial.hpp"

namespace sdlab {

/// a + b*eps with eps^2 = 0; `d` carries the derivative in the multiplier.
template <class T>
struct Dual {
  T v{};
  T d{};

  Dual() = default;
  Dual(int c) : v(T(c)), d(T(0)) {}
  Dual(const T& value) : v(value), d(T(0)) {}
  Dual(const T& value, const T& deriv) : v(value), d(deriv) {}

  friend Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.d + b.d}; }
  friend Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.d - b.d}; }
  friend Dual operator-(const Dual& a) { return {-a.v, -a.d}; }
  friend Dual operator*(const Dual& a, const Dual& b) { return {a.v * b.v, a.v * b.d + a.d * b.v}; }
  friend Dual operator/(const Dual& a, const Dual& b) {
    return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
  }
  Dual& operator+=(const Dual& b) { return *this = *this + b; }
  Dual& operator-=(const Dual& b) { return *this = *this - b; }
  Dual& operator*=(const Dual& b) { return *this = *this * b; }
  Dual& operator/=(const Dual& b) { return *this = *this / b; }
  friend bool operator==(const Dual& a, const Dual& b) { return a.v == b.v && a.d == b.d; }
  friend bool operator!=(const Dual& a, const Dual& b) { return !(a == b); }
};

using DualComplex = Dual<Complex>;

// Uniform hooks used by the generic algorithms.

inline bool is_exact_zero(const Complex& z) { return z == Complex(0.0); }
inline bool is_exact_zero(const QComplex& z) { return z.is_zero(); }
inline bool is_exact_zero(const RatFunc& z) { return z.is_zero(); }
template <class T>
bool is_exact_zero(const Dual<T>& z) {
  return is_exact_zero(z.v);
}

/// Magnitude used for resonance tolerances; exact backends report 0 only for exact zero.
inline double magnitude(const Complex& z) { return std::abs(z); }
inline double magnitude(const QComplex& z) { return std::abs(z.to_complex()); }
inline double magnitude(const RatFunc& z) { return z.is_zero() ? 0.0 : 1.0; }
template <class T>
double magnitude(const Dual<T>& z) {
  return magnitude(z.v);
}

inline Complex to_complex(const Complex& z) { return z; }
inline Complex to_complex(const QComplex& z) { return z.to_complex(); }
template <class T>
Complex to_complex(const Dual<T>& z) {
  return to_complex(z.v);
}

/// Whether the backend decides zero exactly (no tolerance applies).
template <class S>
struct is_exact_backend : std::false_type {};
template <>
struct is_exact_backend<QComplex> : std::true_type {};
template <>
struct is_exact_backend<RatFunc> : std::true_type {};

}  // namespace sdlab

namespace Eigen {

template <>
struct NumTraits<sdlab::QComplex> : GenericNumTraits<sdlab::QComplex> {
  typedef sdlab::QComplex Real;
  typedef sdlab::QComplex NonInteger;
  typedef sdlab::QComplex Nested;
  typedef sdlab::QComplex Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 16,
    MulCost = 32
  };
};

template <>
struct NumTraits<sdlab::RatFunc> : GenericNumTraits<sdlab::RatFunc> {
  typedef sdlab::RatFunc Real;
  typedef sdlab::RatFunc NonInteger;
  typedef sdlab::RatFunc Nested;
  typedef sdlab::RatFunc Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 64,
    MulCost = 128
  };
};

template <class T>
struct NumTraits<sdlab::Dual<T>> : GenericNumTraits<sdlab::Dual<T>> {
  typedef sdlab::Dual<T> Real;
  typedef sdlab::Dual<T> NonInteger;
  typedef sdlab::Dual<T> Nested;
  typedef sdlab::Dual<T> Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 2,
    MulCost = 6
  };
};

}  // namespace Eigen
