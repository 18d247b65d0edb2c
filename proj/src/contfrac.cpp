#include "sdlab/contfrac.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace sdlab::contfrac {

void Surd::validate() const {
  if (r == 0) throw std::invalid_argument("surd: zero denominator");
  if (q == 0) throw std::invalid_argument("surd: zero irrational part (use a rational input)");
  if (d <= 0) throw std::invalid_argument("surd: discriminant must be positive");
  if (is_square(d)) throw std::invalid_argument("surd: discriminant is a perfect square");
}

RationalInterval Surd::enclosure(unsigned bits) const {
  validate();
  BigInt scale = BigInt(1) << (2 * bits);
  BigInt radicand = d * q * q * scale;
  BigInt s = isqrt(radicand);
  BigInt den = BigInt(1) << bits;
  Rational root_lo = make_rational(s, den);
  Rational root_hi = make_rational(s + 1, den);
  // q*sqrt(d) in [sign(q) root_lo, sign(q) root_hi]
  RationalInterval irr = q > 0 ? RationalInterval(root_lo, root_hi) : RationalInterval(-root_hi, -root_lo);
  RationalInterval num = RationalInterval(Rational(p)) + irr;
  return Rational(1, 1) / Rational(r) * num;
}

double Surd::approx() const {
  return (p.get_d() + q.get_d() * std::sqrt(d.get_d())) / r.get_d();
}

std::string Surd::to_string() const {
  std::ostringstream os;
  os << "(" << p.get_str() << " + " << q.get_str() << "*sqrt(" << d.get_str() << "))/" << r.get_str();
  return os.str();
}

BigInt QuotientSequence::at(size_t k) const {
  if (k < prefix.size()) return prefix[k];
  if (period.empty()) throw std::out_of_range("quotient sequence exhausted at index " + std::to_string(k));
  return period[(k - prefix.size()) % period.size()];
}

std::optional<size_t> QuotientSequence::known_length() const {
  if (!period.empty()) return std::nullopt;
  return prefix.size();
}

void QuotientSequence::validate() const {
  if (prefix.empty() && period.empty()) throw std::invalid_argument("empty quotient sequence");
  for (size_t k = 1; k < prefix.size(); ++k)
    if (prefix[k] < 1) throw std::invalid_argument("partial quotient a_" + std::to_string(k) + " must be >= 1");
  for (const auto& a : period)
    if (a < 1) throw std::invalid_argument("periodic partial quotients must be >= 1");
}

namespace {

void push_quotient(ContinuedFraction& cf, const BigInt& a) {
  size_t k = cf.a.size();
  // seeds n_{-1}=1, n_{-2}=0, m_{-1}=0, m_{-2}=1
  BigInt n1 = k >= 1 ? cf.conv[k - 1].n : BigInt(1);
  BigInt n2 = k >= 2 ? cf.conv[k - 2].n : (k == 1 ? BigInt(1) : BigInt(0));
  BigInt m1 = k >= 1 ? cf.conv[k - 1].m : BigInt(0);
  BigInt m2 = k >= 2 ? cf.conv[k - 2].m : (k == 1 ? BigInt(0) : BigInt(1));
  cf.a.push_back(a);
  cf.conv.push_back({a * n1 + n2, a * m1 + m2});
}

/// Surd state (P + sqrt(D))/Q with Q | D - P^2.
struct SurdState {
  BigInt P, D, Q;

  static SurdState from(const Surd& s) {
    BigInt p = s.p, q = s.q, r = s.r;
    if (q < 0) {
      p = -p;
      q = -q;
      r = -r;
    }
    BigInt ar = r < 0 ? BigInt(-r) : r;
    return {p * ar, s.d * q * q * r * r, r * ar};
  }

  BigInt floor_value() const {
    BigInt s = isqrt(D);
    return Q > 0 ? floor_div(P + s, Q) : floor_div(P + s + 1, Q);
  }

  void advance(const BigInt& a) {
    P = a * Q - P;
    BigInt num = D - P * P;
    BigInt next;
    mpz_divexact(next.get_mpz_t(), num.get_mpz_t(), Q.get_mpz_t());
    Q = next;
  }
};

}  // namespace

Rational evaluate(const std::vector<BigInt>& a, size_t k) {
  if (k >= a.size()) throw std::out_of_range("evaluate: index beyond quotients");
  Rational x(a[k]);
  for (size_t j = k; j-- > 0;) x = Rational(a[j]) + 1 / x;
  return x;
}

ContinuedFraction cf_expand(const CfSource& x, size_t depth) {
  ContinuedFraction cf;
  cf.source = x;
  if (auto* q = std::get_if<Rational>(&x)) {
    if (q->get_den() == 0) throw std::invalid_argument("cf_expand: zero denominator");
    BigInt num = q->get_num(), den = q->get_den();
    while (cf.a.size() <= depth) {
      BigInt a = floor_div(num, den);
      push_quotient(cf, a);
      BigInt rem = num - a * den;
      if (rem == 0) {
        cf.exhausted = true;
        break;
      }
      num = den;
      den = rem;
    }
  } else if (auto* s = std::get_if<Surd>(&x)) {
    s->validate();
    SurdState st = SurdState::from(*s);
    for (size_t k = 0; k <= depth; ++k) {
      BigInt a = st.floor_value();
      push_quotient(cf, a);
      st.advance(a);
    }
    // The expansion is eventually periodic: walk states until one repeats to bound the tail.
    std::map<std::pair<BigInt, BigInt>, int> seen;
    BigInt bound = 1;
    while (seen.emplace(std::make_pair(st.P, st.Q), 0).second) {
      BigInt a = st.floor_value();
      bound = std::max(bound, a);
      st.advance(a);
    }
    cf.tail_quotient_bound = bound;
  } else {
    const auto& seq = std::get<QuotientSequence>(x);
    seq.validate();
    size_t n = depth + 1;
    if (auto len = seq.known_length()) n = std::min(n, *len);
    for (size_t k = 0; k < n; ++k) push_quotient(cf, seq.at(k));
    if (!seq.period.empty()) {
      BigInt bound = *std::max_element(seq.period.begin(), seq.period.end());
      for (size_t k = n; k < seq.prefix.size(); ++k) bound = std::max(bound, seq.prefix[k]);
      cf.tail_quotient_bound = bound;
    }
  }
  return cf;
}

RationalInterval ContinuedFraction::enclosure(unsigned bits) const {
  if (auto* q = std::get_if<Rational>(&source)) return RationalInterval(*q);
  if (auto* s = std::get_if<Surd>(&source)) return s->enclosure(bits);
  const auto& seq = std::get<QuotientSequence>(source);
  ContinuedFraction work = *this;
  Rational target = make_rational(1, BigInt(1) << bits);
  auto bracket = [&](const ContinuedFraction& c) {
    const auto& last = c.conv.back();
    BigInt n1 = c.conv.size() >= 2 ? c.conv[c.conv.size() - 2].n : BigInt(1);
    BigInt m1 = c.conv.size() >= 2 ? c.conv[c.conv.size() - 2].m : BigInt(0);
    Rational u = make_rational(last.n, last.m);
    Rational v = make_rational(last.n + n1, last.m + m1);
    return u < v ? RationalInterval(u, v) : RationalInterval(v, u);
  };
  if (!seq.period.empty()) {
    while (bracket(work).width() > target) push_quotient(work, seq.at(work.a.size()));
  }
  return bracket(work);
}

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::not_applicable: return "not applicable";
    case Status::undecidable: return "undecidable";
  }
  return "?";
}

BestApproxReport check_best_approx(const ContinuedFraction& cf, const Rational& candidate,
                                   const RationalInterval& x, size_t k) {
  BestApproxReport rep;
  if (k < 1) throw std::invalid_argument("check_best_approx: k must be >= 1");
  if (k + 1 >= cf.conv.size()) throw std::invalid_argument("check_best_approx: need m_{k+1}");
  const BigInt& n = candidate.get_num();
  const BigInt& m = candidate.get_den();
  for (const auto& c : cf.conv) {
    if (c.n == n && c.m == m) {
      rep.status = Status::not_applicable;
      rep.note = "candidate is a convergent";
      return rep;
    }
  }
  if (m > cf.conv[k + 1].m) {
    rep.status = Status::not_applicable;
    rep.note = "m exceeds m_{k+1}";
    return rep;
  }
  rep.lhs = abs(Rational(m) * x - RationalInterval(Rational(n)));
  rep.rhs = abs(Rational(cf.conv[k].m) * x - RationalInterval(Rational(cf.conv[k].n)));
  if (rep.lhs.lo > rep.rhs.hi) {
    rep.status = Status::pass;
  } else if (rep.lhs.hi <= rep.rhs.lo) {
    rep.status = Status::fail;
    rep.note = "|m x - n| <= |m_k x - n_k|";
  } else {
    rep.status = Status::undecidable;
    rep.note = "undecidable at this enclosure width";
  }
  return rep;
}

BrunoValue bruno(const ContinuedFraction& cf, size_t depth, const TailModel& tail, BrunoMode mode,
                 int precision) {
  if (cf.a.empty()) throw std::invalid_argument("bruno: empty expansion");
  const size_t K = cf.last_index();
  BrunoValue out{RealInterval(precision), RealInterval(precision), depth, cf.exhausted, mode};

  auto term = [&](size_t k) {
    RealInterval num = mode == BrunoMode::bruno ? log(RealInterval(Rational(cf.a[k + 1]), precision))
                                                : log(RealInterval(Rational(cf.conv[k + 1].m), precision));
    return num / RealInterval(Rational(cf.conv[k].m), precision);
  };

  if (cf.exhausted) {
    // Every term is known: the tail is the exact remainder of the finite sum.
    size_t d = std::min(depth, K);
    out.depth = d;
    for (size_t k = 0; k < d; ++k) out.partial_sum += term(k);
    for (size_t k = d; k < K; ++k) out.tail_bound += term(k);
    return out;
  }

  if (depth > K) {
    if (tail.kind != TailKind::quotient_bounded)
      throw std::invalid_argument("bruno: depth " + std::to_string(depth) + " exceeds the " +
                                  std::to_string(K) + " available quotients and no tail model bounds a_k");
    depth = K;
    out.depth = K;
  }
  for (size_t k = 0; k < depth; ++k) out.partial_sum += term(k);

  if (tail.kind == TailKind::none) {
    out.tail_bound = RealInterval::infinity(precision);
    return out;
  }
  if (tail.quotient_bound < 1) throw std::invalid_argument("bruno: quotient bound must be >= 1");
  for (size_t k = depth + 1; k <= K; ++k)
    if (cf.a[k] > tail.quotient_bound)
      throw std::invalid_argument("bruno: known quotient a_" + std::to_string(k) + " exceeds the tail bound");

  // m_l >= Phi^(l-1) gives sum_{l >= D} Phi^(1-l) = Phi^(3-D).
  RealInterval phi = RealInterval::golden(precision);
  RealInterval log_phi = log(phi);
  RealInterval D(static_cast<long>(depth), precision);
  RealInterval geometric = exp((RealInterval(3L, precision) - D) * log_phi);
  RealInterval A(Rational(tail.quotient_bound), precision);
  RealInterval bound(precision);
  if (mode == BrunoMode::bruno) {
    bound = log(A) * geometric;
  } else {
    // log m_{l+1}/m_l <= log(A+1)/m_l + log(m_l)/m_l <= log(A+1) Phi^(1-l) + 2 Phi^((1-l)/2)
    RealInterval one(1L, precision), two(2L, precision);
    RealInterval half_geo = exp((one - D) / two * log_phi) / (one - exp(-(log_phi / two)));
    bound = log(A + one) * geometric + two * half_geo;
  }
  // keep only the upper endpoint; the lower bound on omitted non-negative terms is 0
  out.tail_bound = RealInterval::hull(RealInterval(0L, precision), bound);
  return out;
}

GapReport convergent_gap_checks(const ContinuedFraction& cf, const RationalInterval& x) {
  GapReport rep;
  size_t last = cf.conv.size();
  // k ranges over indices with m_{k+1} known; for finite expansions the final step is excluded
  size_t kmax = cf.exhausted ? (last >= 3 ? last - 3 : 0) : (last >= 2 ? last - 2 : 0);
  if (cf.exhausted) rep.note = "finite expansion, checks vacuous beyond last k";
  for (size_t k = 1; k <= kmax; ++k) {
    const auto& ck = cf.conv[k];
    const auto& ck1 = cf.conv[k + 1];
    RationalInterval t = abs(Rational(ck.m) * x - RationalInterval(Rational(ck.n)));
    Rational lower = make_rational(1, 2 * ck1.m);
    Rational upper = make_rational(1, ck1.m);
    GapEntry e{k, false, false, false, 0.0, 0.0};
    bool undecided = false;
    if (t.lo > lower && t.hi < upper) {
      e.bounds_ok = true;
    } else if (t.hi <= lower || t.lo >= upper) {
      e.bounds_ok = false;
    } else {
      undecided = true;
    }
    Rational ratio = ck.value();
    if (k % 2 == 0) {
      if (ratio < x.lo) e.side_ok = true;
      else if (!(ratio >= x.hi)) undecided = true;
    } else {
      if (ratio > x.hi) e.side_ok = true;
      else if (!(ratio <= x.lo)) undecided = true;
    }
    e.spacing_ok = abs(ck1.value() - ratio) == make_rational(1, ck.m * ck1.m);
    e.lower_margin = to_double((t.lo - lower) / lower);
    e.upper_margin = to_double((upper - t.hi) / upper);
    rep.entries.push_back(e);
    if (undecided) {
      if (rep.status == Status::pass) rep.status = Status::undecidable;
      rep.note = "enclosure too wide at k=" + std::to_string(k);
    } else if (!(e.bounds_ok && e.side_ok && e.spacing_ok)) {
      rep.status = Status::fail;
    }
  }
  return rep;
}

BigInt fibonacci(size_t k) {
  BigInt f;
  mpz_fib_ui(f.get_mpz_t(), k);
  return f;
}

}  // namespace sdlab::contfrac
