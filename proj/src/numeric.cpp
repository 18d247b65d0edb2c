#include "sdlab/numeric.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <sstream>

namespace sdlab {

namespace {
std::atomic<int> g_precision{128};

struct MpfrTemp {
  mpfr_t v;
  explicit MpfrTemp(int prec) { mpfr_init2(v, prec); }
  ~MpfrTemp() { mpfr_clear(v); }
  MpfrTemp(const MpfrTemp&) = delete;
  MpfrTemp& operator=(const MpfrTemp&) = delete;
};

std::string mpfr_format(const char* fmt, int digits, const mpfr_t x) {
  char* buf = nullptr;
  mpfr_asprintf(&buf, fmt, digits, x);
  std::string out = buf ? buf : "";
  mpfr_free_str(buf);
  return out;
}
}  // namespace

int default_precision() { return g_precision.load(std::memory_order_relaxed); }

void set_default_precision(int bits) {
  if (bits < MPFR_PREC_MIN || bits > 1 << 20)
    throw std::invalid_argument("precision out of range: " + std::to_string(bits));
  g_precision.store(bits, std::memory_order_relaxed);
}

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace {
Rational parse_decimal(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty number");
  size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
  std::string digits;
  long frac = 0;
  bool seen_dot = false, any = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      any = true;
      if (seen_dot) ++frac;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!any) throw std::invalid_argument("malformed number: " + std::string(s));
  long exponent = 0;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw std::invalid_argument("malformed number: " + std::string(s));
    std::string e(s.substr(i + 1));
    size_t used = 0;
    try {
      exponent = std::stol(e, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != e.size() || e.empty()) throw std::invalid_argument("malformed exponent: " + std::string(s));
  }
  BigInt num(digits, 10);
  if (neg) num = -num;
  long shift = exponent - frac;
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(shift)));
  return shift >= 0 ? Rational(num * scale) : make_rational(num, scale);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}
}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  Rational num = parse_decimal(trim(text.substr(0, slash)));
  Rational den = parse_decimal(trim(text.substr(slash + 1)));
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  return num / den;
}

std::string to_string(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) { return mpq_get_d(q.get_mpq_t()); }

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

BigInt floor_div(const BigInt& a, const BigInt& b) {
  if (b == 0) throw std::domain_error("floor_div by zero");
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

BigInt floor(const Rational& q) { return floor_div(q.get_num(), q.get_den()); }

BigInt isqrt(const BigInt& n) {
  if (n < 0) throw std::domain_error("isqrt of negative");
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_square(const BigInt& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0; }

// ---------------------------------------------------------------------------

void RealInterval::init() {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
}

RealInterval::RealInterval(int precision) : prec_(precision) {
  init();
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

RealInterval::RealInterval(long v, int precision) : prec_(precision) {
  init();
  mpfr_set_si(lo_, v, MPFR_RNDD);
  mpfr_set_si(hi_, v, MPFR_RNDU);
}

RealInterval::RealInterval(const Rational& q, int precision) : prec_(precision) {
  init();
  mpfr_set_q(lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, q.get_mpq_t(), MPFR_RNDU);
}

RealInterval::RealInterval(const Rational& lo, const Rational& hi, int precision) : prec_(precision) {
  if (lo > hi) throw std::invalid_argument("RealInterval: lo > hi");
  init();
  mpfr_set_q(lo_, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_, hi.get_mpq_t(), MPFR_RNDU);
}

RealInterval RealInterval::from_double(double v, int precision) {
  RealInterval r(precision);
  mpfr_set_d(r.lo_, v, MPFR_RNDD);
  mpfr_set_d(r.hi_, v, MPFR_RNDU);
  return r;
}

RealInterval::RealInterval(const RealInterval& o) : prec_(o.prec_) {
  init();
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

RealInterval::RealInterval(RealInterval&& o) noexcept : prec_(o.prec_) {
  init();
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

RealInterval& RealInterval::operator=(const RealInterval& o) {
  if (this != &o) {
    if (prec_ != o.prec_) {
      mpfr_clear(lo_);
      mpfr_clear(hi_);
      prec_ = o.prec_;
      init();
    }
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  return *this;
}

RealInterval& RealInterval::operator=(RealInterval&& o) noexcept {
  std::swap(prec_, o.prec_);
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  return *this;
}

RealInterval::~RealInterval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

double RealInterval::lo() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double RealInterval::hi() const { return mpfr_get_d(hi_, MPFR_RNDU); }
double RealInterval::mid() const { return 0.5 * (mpfr_get_d(lo_, MPFR_RNDN) + mpfr_get_d(hi_, MPFR_RNDN)); }
double RealInterval::width() const {
  MpfrTemp w(prec_);
  mpfr_sub(w.v, hi_, lo_, MPFR_RNDU);
  return mpfr_get_d(w.v, MPFR_RNDU);
}

Rational RealInterval::lo_rational() const {
  if (!mpfr_number_p(lo_)) throw std::domain_error("non-finite endpoint");
  Rational q;
  mpfr_get_q(q.get_mpq_t(), lo_);
  return q;
}

Rational RealInterval::hi_rational() const {
  if (!mpfr_number_p(hi_)) throw std::domain_error("non-finite endpoint");
  Rational q;
  mpfr_get_q(q.get_mpq_t(), hi_);
  return q;
}

bool RealInterval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
bool RealInterval::is_finite() const { return mpfr_number_p(lo_) && mpfr_number_p(hi_); }

RealInterval RealInterval::pi(int precision) {
  RealInterval r(precision);
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

RealInterval RealInterval::golden(int precision) {
  RealInterval five(5L, precision);
  return (RealInterval(1L, precision) + sqrt(five)) / RealInterval(2L, precision);
}

RealInterval RealInterval::infinity(int precision) {
  RealInterval r(precision);
  mpfr_set_inf(r.lo_, 1);
  mpfr_set_inf(r.hi_, 1);
  return r;
}

RealInterval RealInterval::hull(const RealInterval& a, const RealInterval& b) {
  RealInterval r(std::max(a.prec_, b.prec_));
  mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

RealInterval operator+(const RealInterval& a, const RealInterval& b) {
  RealInterval r(std::max(a.prec_, b.prec_));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

RealInterval operator-(const RealInterval& a, const RealInterval& b) {
  RealInterval r(std::max(a.prec_, b.prec_));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

RealInterval operator-(const RealInterval& a) {
  RealInterval r(a.prec_);
  mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
  return r;
}

RealInterval operator*(const RealInterval& a, const RealInterval& b) {
  int prec = std::max(a.prec_, b.prec_);
  RealInterval r(prec);
  MpfrTemp t(prec);
  const mpfr_t* xs[2] = {&a.lo_, &a.hi_};
  const mpfr_t* ys[2] = {&b.lo_, &b.hi_};
  mpfr_set_inf(r.lo_, 1);
  mpfr_set_inf(r.hi_, -1);
  for (auto* x : xs)
    for (auto* y : ys) {
      mpfr_mul(t.v, *x, *y, MPFR_RNDD);
      mpfr_min(r.lo_, r.lo_, t.v, MPFR_RNDD);
      mpfr_mul(t.v, *x, *y, MPFR_RNDU);
      mpfr_max(r.hi_, r.hi_, t.v, MPFR_RNDU);
    }
  return r;
}

RealInterval operator/(const RealInterval& a, const RealInterval& b) {
  if (b.contains_zero()) throw std::domain_error("RealInterval: division by an interval containing 0");
  int prec = std::max(a.prec_, b.prec_);
  RealInterval r(prec);
  MpfrTemp t(prec);
  const mpfr_t* xs[2] = {&a.lo_, &a.hi_};
  const mpfr_t* ys[2] = {&b.lo_, &b.hi_};
  mpfr_set_inf(r.lo_, 1);
  mpfr_set_inf(r.hi_, -1);
  for (auto* x : xs)
    for (auto* y : ys) {
      mpfr_div(t.v, *x, *y, MPFR_RNDD);
      mpfr_min(r.lo_, r.lo_, t.v, MPFR_RNDD);
      mpfr_div(t.v, *x, *y, MPFR_RNDU);
      mpfr_max(r.hi_, r.hi_, t.v, MPFR_RNDU);
    }
  return r;
}

RealInterval log(const RealInterval& a) {
  if (mpfr_sgn(a.lo_) <= 0) throw std::domain_error("RealInterval: log of non-positive interval");
  RealInterval r(a.prec_);
  mpfr_log(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_log(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

RealInterval exp(const RealInterval& a) {
  RealInterval r(a.prec_);
  mpfr_exp(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

RealInterval sqrt(const RealInterval& a) {
  if (mpfr_sgn(a.lo_) < 0) throw std::domain_error("RealInterval: sqrt of negative interval");
  RealInterval r(a.prec_);
  mpfr_sqrt(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

RealInterval sinh(const RealInterval& a) {
  RealInterval r(a.prec_);
  mpfr_sinh(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_sinh(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

RealInterval abs(const RealInterval& a) {
  if (mpfr_sgn(a.lo_) >= 0) return a;
  if (mpfr_sgn(a.hi_) <= 0) return -a;
  RealInterval r(a.prec_);
  mpfr_set_zero(r.lo_, 1);
  MpfrTemp t(a.prec_);
  mpfr_neg(t.v, a.lo_, MPFR_RNDU);
  mpfr_max(r.hi_, t.v, a.hi_, MPFR_RNDU);
  return r;
}

RealInterval pow(const RealInterval& a, const RealInterval& b) { return exp(b * log(a)); }

RealInterval zeta(const RealInterval& s) {
  if (mpfr_cmp_ui(s.lo_, 1) <= 0) throw std::domain_error("zeta: argument must exceed 1");
  RealInterval r(s.prec_);
  mpfr_zeta(r.lo_, s.hi_, MPFR_RNDD);
  mpfr_zeta(r.hi_, s.lo_, MPFR_RNDU);
  return r;
}

bool RealInterval::certainly_lt(const RealInterval& b) const { return mpfr_less_p(hi_, b.lo_) != 0; }
bool RealInterval::certainly_le(const RealInterval& b) const { return mpfr_lessequal_p(hi_, b.lo_) != 0; }

std::string RealInterval::to_string(int digits) const {
  MpfrTemp m(prec_);
  mpfr_add(m.v, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m.v, m.v, 1, MPFR_RNDN);
  return mpfr_format("%.*Rg", digits, m.v);
}

std::string RealInterval::hi_string(int digits) const { return mpfr_format("%.*RUe", digits, hi_); }

std::ostream& operator<<(std::ostream& os, const RealInterval& x) {
  return os << "[" << mpfr_format("%.*RDe", 17, x.lo_raw()) << ", " << mpfr_format("%.*RUe", 17, x.hi_raw()) << "]";
}

// ---------------------------------------------------------------------------

RationalInterval::RationalInterval(const Rational& l, const Rational& h) : lo(l), hi(h) {
  if (lo > hi) throw std::invalid_argument("RationalInterval: lo > hi");
}

RationalInterval operator+(const RationalInterval& a, const RationalInterval& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}

RationalInterval operator-(const RationalInterval& a, const RationalInterval& b) {
  return {a.lo - b.hi, a.hi - b.lo};
}

RationalInterval operator*(const RationalInterval& a, const RationalInterval& b) {
  Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

RationalInterval operator*(const Rational& s, const RationalInterval& a) {
  if (s >= 0) return {s * a.lo, s * a.hi};
  return {s * a.hi, s * a.lo};
}

RationalInterval abs(const RationalInterval& a) {
  if (a.lo >= 0) return a;
  if (a.hi <= 0) return {-a.hi, -a.lo};
  return {Rational(0), std::max(Rational(-a.lo), a.hi)};
}

Ordering3 compare(const RationalInterval& a, const RationalInterval& b) {
  if (a.hi < b.lo) return Ordering3::less;
  if (a.lo > b.hi) return Ordering3::greater;
  return Ordering3::unresolved;
}

std::ostream& operator<<(std::ostream& os, const QComplex& z) {
  return os << "(" << z.re.get_str() << ", " << z.im.get_str() << ")";
}

}  // namespace sdlab
