#include "sdlab/polynomial.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace sdlab {

Poly::Poly(const Rational& c) {
  if (c != 0) c_.push_back(c);
}

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::variable() { return Poly(std::vector<Rational>{Rational(0), Rational(1)}); }

Poly Poly::cyclic(unsigned j) {
  if (j == 0) return Poly();
  std::vector<Rational> c(j + 1, Rational(0));
  c[0] = -1;
  c[j] = 1;
  return Poly(std::move(c));
}

QComplex Poly::eval(const QComplex& q) const {
  QComplex acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + QComplex(*it);
  return acc;
}

Complex Poly::eval(const Complex& q) const {
  Complex acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + to_double(*it);
  return acc;
}

Poly Poly::monic() const {
  if (c_.empty()) return *this;
  Rational lead = c_.back();
  std::vector<Rational> c(c_);
  for (auto& x : c) x /= lead;
  return Poly(std::move(c));
}

Poly operator+(const Poly& a, const Poly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return Poly(std::move(c));
}

Poly operator-(const Poly& a) {
  std::vector<Rational> c(a.c_);
  for (auto& x : c) x = -x;
  return Poly(std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  return Poly(std::move(c));
}

void Poly::divmod(const Poly& a, const Poly& b, Poly& quot, Poly& rem) {
  if (b.is_zero()) throw std::domain_error("Poly::divmod: division by zero polynomial");
  std::vector<Rational> r(a.c_);
  long db = b.degree();
  long dq = a.degree() - db;
  std::vector<Rational> q(dq >= 0 ? static_cast<size_t>(dq + 1) : 0, Rational(0));
  Rational lead = b.c_.back();
  for (long i = dq; i >= 0; --i) {
    Rational coef = r[static_cast<size_t>(i + db)] / lead;
    q[static_cast<size_t>(i)] = coef;
    if (coef == 0) continue;
    for (long j = 0; j <= db; ++j) r[static_cast<size_t>(i + j)] -= coef * b.c_[static_cast<size_t>(j)];
  }
  quot = Poly(std::move(q));
  rem = Poly(std::move(r));
}

Poly Poly::gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::string Poly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << sdlab::to_string(c_[i]) << ")";
    if (i == 1) os << "*q";
    if (i > 1) os << "*q^" << i;
  }
  return os.str();
}

// ---------------------------------------------------------------------------

RatFunc::RatFunc(const Poly& num, const Poly& den) : num_(num), den_(den) {
  if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
  normalize();
}

void RatFunc::normalize() {
  if (num_.is_zero()) {
    den_ = Poly(1);
    return;
  }
  Poly g = Poly::gcd(num_, den_);
  if (g.degree() > 0) {
    Poly q, r;
    Poly::divmod(num_, g, q, r);
    num_ = q;
    Poly::divmod(den_, g, q, r);
    den_ = q;
  }
  Rational lead = den_.leading();
  if (lead != 1) {
    num_ = num_ * Poly(Rational(1) / lead);
    den_ = den_.monic();
  }
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RatFunc operator-(const RatFunc& a) {
  RatFunc r = a;
  r.num_ = -r.num_;
  return r;
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc();
  return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw std::domain_error("RatFunc: division by zero");
  return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RatFunc::to_string() const {
  if (den_ == Poly(1)) return num_.to_string();
  return "[" + num_.to_string() + "] / [" + den_.to_string() + "]";
}

bool poles_are_roots_of_unity(const Poly& den, unsigned max_order, unsigned multiplicity) {
  if (den.degree() <= 0) return true;
  Poly bound(1);
  for (unsigned j = 1; j <= max_order; ++j)
    for (unsigned e = 0; e < multiplicity; ++e) bound = bound * Poly::cyclic(j);
  Poly q, r;
  Poly::divmod(bound, den, q, r);
  return r.is_zero();
}

}  // namespace sdlab
