#pragma once

// Seeded generators for property tests.

#include <random>
#include <vector>

#include "sdlab/contfrac.hpp"
#include "sdlab/numeric.hpp"

namespace sdlab::testgen {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611ULL);
  return gen;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }
inline double uniform_real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

/// Rational n/m with 1 <= m <= max_den and |n| <= span*m.
inline Rational rational(long max_den, long span = 3) {
  long m = uniform(1, max_den);
  long n = uniform(-span * m, span * m);
  return make_rational(BigInt(n), BigInt(m));
}

/// (p + q sqrt d)/r with d non-square, r != 0.
inline contfrac::Surd surd() {
  for (;;) {
    long d = uniform(2, 200);
    if (is_square(BigInt(d))) continue;
    long r = uniform(1, 30) * (uniform(0, 1) ? 1 : -1);
    long q = uniform(1, 9) * (uniform(0, 1) ? 1 : -1);
    return {BigInt(uniform(-40, 40)), BigInt(q), BigInt(d), BigInt(r)};
  }
}

inline std::vector<BigInt> quotients(size_t k, long max_q) {
  std::vector<BigInt> a;
  for (size_t i = 0; i < k; ++i) a.emplace_back(uniform(1, max_q));
  return a;
}

}  // namespace sdlab::testgen
