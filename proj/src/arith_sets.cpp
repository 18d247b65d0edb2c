#include "sdlab/arith_sets.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace sdlab::arith {

using contfrac::ContinuedFraction;
using contfrac::TailKind;
using contfrac::TailModel;

// ---------------------------------------------------------------------------
// IntervalSet

IntervalSet IntervalSet::from_intervals(std::vector<OpenInterval> raw, RealInterval tail) {
  IntervalSet out;
  out.tail_ = std::move(tail);
  const Rational zero(0), one(1);
  std::vector<OpenInterval> clipped;
  clipped.reserve(raw.size());
  for (auto& iv : raw) {
    if (iv.lo < zero) iv.lo = zero;
    if (iv.hi > one) iv.hi = one;
    if (iv.lo < iv.hi) clipped.push_back(std::move(iv));
  }
  std::sort(clipped.begin(), clipped.end(), [](const OpenInterval& a, const OpenInterval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  for (auto& iv : clipped) {
    if (!out.intervals_.empty() && iv.lo < out.intervals_.back().hi) {
      if (iv.hi > out.intervals_.back().hi) out.intervals_.back().hi = iv.hi;
    } else {
      out.intervals_.push_back(std::move(iv));
    }
  }
  return out;
}

Rational IntervalSet::exact_measure() const {
  Rational total(0);
  for (const auto& iv : intervals_) total += iv.length();
  return total;
}

long IntervalSet::component_of(const Rational& x) const {
  auto it = std::upper_bound(intervals_.begin(), intervals_.end(), x,
                             [](const Rational& v, const OpenInterval& iv) { return v < iv.lo; });
  if (it == intervals_.begin()) return -1;
  --it;
  return it->contains(x) ? static_cast<long>(it - intervals_.begin()) : -1;
}

long IntervalSet::component_of(double x) const {
  if (!std::isfinite(x)) return -1;
  return component_of(Rational(x));
}

bool IntervalSet::contains(const Rational& x) const { return component_of(x) >= 0; }
bool IntervalSet::contains(double x) const { return component_of(x) >= 0; }

bool IntervalSet::subset_of(const IntervalSet& other) const {
  for (const auto& iv : intervals_) {
    // a connected open interval lies in one component of the other union
    Rational mid = (iv.lo + iv.hi) / 2;
    long c = other.component_of(mid);
    if (c < 0) return false;
    const auto& host = other.intervals_[static_cast<size_t>(c)];
    if (iv.lo < host.lo || iv.hi > host.hi) return false;
  }
  return true;
}

IntervalSet IntervalSet::restricted_to(const Rational& lo, const Rational& hi) const {
  std::vector<OpenInterval> parts;
  for (const auto& iv : intervals_) {
    Rational a = std::max(iv.lo, lo), b = std::min(iv.hi, hi);
    if (a < b) parts.push_back({a, b});
  }
  return from_intervals(std::move(parts), tail_);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::in: return "in";
    case Verdict::out: return "out";
    case Verdict::undecided: return "undecided";
  }
  return "?";
}

void SetSpec::validate() const {
  switch (kind) {
    case SetKind::L:
      if (!RealInterval(M).certainly_gt(log(RealInterval(3L))))
        throw std::invalid_argument("A_M^L requires M > log 3");
      break;
    case SetKind::S:
      if (M <= 0) throw std::invalid_argument("A_M^S requires M > 0");
      break;
    case SetKind::C:
      if (tau <= 0) throw std::invalid_argument("A_M^C requires tau > 0");
      if (!measure_bound_C(M, tau).certainly_lt(RealInterval(1L)))
        throw std::invalid_argument("A_M^C requires M > 2 zeta(1+tau)");
      break;
    case SetKind::DC:
      if (gamma <= 0) throw std::invalid_argument("DC requires gamma > 0");
      if (tau < 0) throw std::invalid_argument("DC requires tau >= 0");
      break;
  }
}

// ---------------------------------------------------------------------------
// Membership

Membership member_L(const ContinuedFraction& cf, const Rational& M, const TailModel& tail) {
  Membership res;
  if (cf.exhausted) {
    res.verdict = Verdict::out;
    res.detail = "rational input";
    return res;
  }
  const size_t K = cf.last_index();
  res.depth = K;
  const RealInterval Mi(M);
  bool uncertain = false;
  for (size_t k = 0; k < K; ++k) {
    RealInterval term = log(RealInterval(Rational(cf.conv[k + 1].m))) / RealInterval(Rational(cf.conv[k].m));
    if (term.certainly_gt(Mi)) {
      res.verdict = Verdict::out;
      res.detail = "log m_{k+1}/m_k > M at k=" + std::to_string(k);
      return res;
    }
    if (!term.certainly_le(Mi)) uncertain = true;
  }
  if (uncertain) {
    res.detail = "comparison unresolved at current precision";
    return res;
  }
  if (tail.kind == TailKind::none) {
    res.detail = "no tail model: verified for k < " + std::to_string(K);
    return res;
  }
  // For k >= K: log m_{k+1}/m_k <= log((A+1) m_k)/m_k, decreasing in m_k once (A+1) m_k >= 3.
  const RealInterval A1(Rational(tail.quotient_bound + 1));
  BigInt m = cf.conv[K].m;
  RealInterval sup_bound = log(A1 * RealInterval(Rational(m))) / RealInterval(Rational(m));
  while ((tail.quotient_bound + 1) * m < 3) {
    m += 1;
    RealInterval f = log(A1 * RealInterval(Rational(m))) / RealInterval(Rational(m));
    sup_bound = RealInterval::hull(sup_bound, f);
  }
  if (sup_bound.certainly_le(Mi)) {
    res.verdict = Verdict::in;
    res.detail = "certified with quotient bound " + tail.quotient_bound.get_str();
  } else {
    res.detail = "tail bound inconclusive beyond k=" + std::to_string(K);
  }
  return res;
}

Membership member_S(const ContinuedFraction& cf, const Rational& M, const TailModel& tail) {
  Membership res;
  if (cf.exhausted) {
    res.verdict = Verdict::out;
    res.detail = "rational input";
    return res;
  }
  const size_t K = cf.last_index();
  auto b = contfrac::bruno(cf, K, tail);
  res.depth = b.depth;
  const RealInterval Mi(M);
  if (b.partial_sum.certainly_gt(Mi)) {
    res.verdict = Verdict::out;
    res.detail = "partial Bruno sum exceeds M";
  } else if (b.tail_bound.is_finite() && b.total_upper().certainly_le(Mi)) {
    res.verdict = Verdict::in;
    res.detail = "partial sum + tail <= M";
  } else {
    res.detail = "undecided(" + std::to_string(b.depth) + ")";
  }
  return res;
}

Membership member_C(const ContinuedFraction& cf, const Rational& M, const Rational& tau, unsigned long m_max,
                    const TailModel& tail) {
  if (m_max < 1) throw std::invalid_argument("member_C: m_max must be >= 1");
  if (M <= 0) throw std::invalid_argument("member_C: M must be positive");
  Membership res;
  res.depth = m_max;
  if (cf.exhausted) {
    res.verdict = Verdict::out;
    res.detail = "rational input: the supremum is infinite at n/m = x";
    return res;
  }
  const RationalInterval x = cf.enclosure(256);
  const RealInterval Mi(M), expo(Rational(2) + tau);

  auto threshold = [&](const BigInt& m) {
    return RealInterval(1L) / (Mi * pow(RealInterval(Rational(m)), expo));
  };
  // returns -1 violation, 0 fine; throws when unresolved
  auto check = [&](const BigInt& n, const BigInt& m) -> int {
    RationalInterval delta = abs(x - RationalInterval(make_rational(n, m)));
    RealInterval d(delta.lo, delta.hi);
    RealInterval rho = threshold(m);
    if (d.certainly_lt(rho)) return -1;
    if (d.certainly_ge(rho)) return 0;
    throw Undecidable("member_C: enclosure too wide at m=" + m.get_str());
  };

  for (unsigned long mu = 1; mu <= m_max; ++mu) {
    BigInt m(mu);
    BigInt c1 = sdlab::floor(Rational(Rational(m) * x.lo)), c2 = sdlab::floor(Rational(Rational(m) * x.hi));
    for (BigInt n : {c1, BigInt(c1 + 1), c2, BigInt(c2 + 1)}) {
      if (check(n, m) < 0) {
        res.verdict = Verdict::out;
        res.detail = "violated at n/m = " + n.get_str() + "/" + m.get_str();
        return res;
      }
    }
  }

  // Beyond m_max only convergents can come closer than 1/(2m^2).
  const RealInterval two(2L);
  const RealInterval taui(tau);
  bool nonconv_ok = (Mi * pow(RealInterval(Rational(m_max + 1)), taui)).certainly_ge(two);
  const size_t K = cf.last_index();
  for (size_t k = 0; k < K; ++k) {
    const auto& ck = cf.conv[k];
    if (ck.m <= m_max) continue;
    // |x - n_k/m_k| > 1/(2 m_k m_{k+1}) >= 1/(M m_k^{2+tau})  when  M m_k^{1+tau} >= 2 m_{k+1}
    RealInterval lhs = Mi * pow(RealInterval(Rational(ck.m)), RealInterval(Rational(1) + tau));
    if (lhs.certainly_ge(two * RealInterval(Rational(cf.conv[k + 1].m)))) continue;
    if (check(ck.n, ck.m) < 0) {
      res.verdict = Verdict::out;
      res.detail = "violated at convergent " + ck.n.get_str() + "/" + ck.m.get_str();
      return res;
    }
  }
  bool tail_ok = false;
  if (tail.kind == TailKind::quotient_bounded) {
    BigInt m_star = std::max(cf.conv[K].m, BigInt(m_max + 1));
    RealInterval need = two * RealInterval(Rational(tail.quotient_bound + 1));
    tail_ok = (Mi * pow(RealInterval(Rational(m_star)), taui)).certainly_ge(need);
  }
  if (nonconv_ok && tail_ok) {
    res.verdict = Verdict::in;
    res.detail = "certified: exhaustive for m <= " + std::to_string(m_max) + ", convergent argument beyond";
  } else {
    res.detail = "verified for m <= " + std::to_string(m_max) + " only";
  }
  return res;
}

// ---------------------------------------------------------------------------
// Exclusion sets

Rational exclusion_radius(const Rational& c, const Rational& tau, unsigned long m) {
  if (tau.get_den() == 1 && tau >= 0) {
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), m, 2 + tau.get_num().get_ui());
    return c / Rational(p);
  }
  RealInterval r = RealInterval(c) / pow(RealInterval(static_cast<long>(m)), RealInterval(Rational(2) + tau));
  return r.hi_rational();
}

namespace {

IntervalSet j_union(const std::function<Rational(unsigned long)>& radius, unsigned long m_max, RealInterval tail) {
  std::vector<OpenInterval> raw;
  for (unsigned long m = 1; m <= m_max; ++m) {
    Rational r = radius(m);
    for (unsigned long n = 0; n <= m; ++n) {
      if (std::gcd(n, m) != 1) continue;
      Rational c = make_rational(BigInt(n), BigInt(m));
      raw.push_back({c - r, c + r});
    }
  }
  return IntervalSet::from_intervals(std::move(raw), std::move(tail));
}

/// Upper bound on sum_{m > N} m^{-s}, s > 1, via the integral N^{1-s}/(s-1).
RealInterval zeta_tail(const Rational& s, unsigned long N) {
  RealInterval si(s);
  RealInterval one(1L);
  return pow(RealInterval(static_cast<long>(N)), one - si) / (si - one);
}

}  // namespace

RealInterval measure_bound_C(const Rational& M, const Rational& tau) {
  return RealInterval(2L) * zeta(RealInterval(Rational(1) + tau)) / RealInterval(M);
}

IntervalSet complement_C(const Rational& M, const Rational& tau, unsigned long m_max) {
  SetSpec{SetKind::C, M, Rational(0), tau}.validate();
  if (m_max < 1) throw std::invalid_argument("complement_C: m_max must be >= 1");
  Rational inv = 1 / M;
  // at most m numerators per denominator, each of length 2/(M m^{2+tau})
  RealInterval tail = RealInterval(2L) / RealInterval(M) * zeta_tail(Rational(1) + tau, m_max);
  return j_union([&](unsigned long m) { return exclusion_radius(inv, tau, m); }, m_max, std::move(tail));
}

IntervalSet dc_complement(const Rational& gamma, const Rational& tau, unsigned long m_max) {
  SetSpec{SetKind::DC, Rational(1), gamma, tau}.validate();
  if (m_max < 1) throw std::invalid_argument("dc_complement: m_max must be >= 1");
  RealInterval tail = tau > 0 ? RealInterval(2L) * RealInterval(gamma) * zeta_tail(Rational(1) + tau, m_max)
                              : RealInterval::infinity();
  return j_union([&](unsigned long m) { return exclusion_radius(gamma, tau, m); }, m_max, std::move(tail));
}

IntervalSet complement_L_inner(const Rational& M, unsigned long m_max) {
  if (M <= 0) throw std::invalid_argument("complement_L_inner: M must be positive");
  const RealInterval Mi(M);
  auto radius = [&](unsigned long m) {
    RealInterval mi(static_cast<long>(m));
    return (RealInterval(1L) / (mi * exp(Mi * mi))).hi_rational();
  };
  // sum_{m > N} m * 2/(m e^{Mm}) = 2 e^{-M(N+1)}/(1 - e^{-M})
  RealInterval one(1L);
  RealInterval tail = RealInterval(2L) * exp(-(Mi * RealInterval(static_cast<long>(m_max + 1)))) / (one - exp(-Mi));
  return j_union(radius, m_max, std::move(tail));
}

// ---------------------------------------------------------------------------
// Rank intervals and the measure lemma

RankInterval rank_interval(const std::vector<BigInt>& quotients) {
  if (quotients.empty()) throw std::invalid_argument("rank_interval: need k >= 1 quotients");
  contfrac::QuotientSequence seq;
  seq.prefix.push_back(0);
  for (const auto& a : quotients) {
    if (a < 1) throw std::invalid_argument("rank_interval: quotients must be >= 1");
    seq.prefix.push_back(a);
  }
  const size_t k = quotients.size();
  auto cf = contfrac::cf_expand(seq, k);
  RankInterval ri;
  ri.quotients = quotients;
  ri.last = cf.conv[k];
  ri.prev = cf.conv[k - 1];
  Rational u = ri.last.value();
  Rational v = make_rational(ri.last.n + ri.prev.n, ri.last.m + ri.prev.m);
  if (k % 2 == 0) {
    ri.lo = u;
    ri.hi = v;
  } else {
    ri.lo = v;
    ri.hi = u;
  }
  return ri;
}

RankInterval golden_rank_interval(size_t k) { return rank_interval(std::vector<BigInt>(k, BigInt(1))); }

namespace {

/// Bound on sum over m > N of 2 gamma m^{-2-tau} p_m with p_m <= m|I| + 2.
RealInterval lemma_tail(const Rational& gamma, const Rational& tau, const Rational& len, unsigned long N) {
  RealInterval two(2L);
  return two * RealInterval(gamma) *
         (RealInterval(len) * zeta_tail(Rational(1) + tau, N) + two * zeta_tail(Rational(2) + tau, N));
}

}  // namespace

RankMeasureReport rank_measure_check(const Rational& gamma, const Rational& tau, size_t k, unsigned long m_max) {
  if (tau < 1) throw std::invalid_argument("rank_measure_check: requires tau >= 1");
  if (!(gamma > 0 && gamma < Rational(1, 26))) throw std::invalid_argument("rank_measure_check: requires 0 < gamma < 1/26");
  if (k < 2) throw std::invalid_argument("rank_measure_check: requires k >= 2");
  if (m_max < 2) throw std::invalid_argument("rank_measure_check: m_max must be >= 2");

  RankMeasureReport rep;
  RankInterval Ik = golden_rank_interval(k);
  rep.interval_length = Ik.length();
  rep.m_k = Ik.last.m;
  rep.target = (1 - 26 * gamma) * rep.interval_length;

  std::vector<OpenInterval> parts;
  for (unsigned long mu = 1; mu <= m_max; ++mu) {
    BigInt m(mu);
    Rational r = exclusion_radius(gamma, tau, mu);
    // n/m - r < hi and n/m + r > lo
    BigInt n_first = sdlab::floor(Rational(Rational(m) * (Ik.lo - r)));
    BigInt n_last = sdlab::floor(Rational(Rational(m) * (Ik.hi + r))) + 1;
    unsigned long count = 0;
    for (BigInt n = n_first; n <= n_last; ++n) {
      if (n <= 0 || n >= m) continue;  // rationals of (0,1)
      BigInt g;
      mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
      if (g != 1) continue;
      Rational c = make_rational(n, m);
      OpenInterval J{c - r, c + r};
      if (!(J.lo < Ik.hi && J.hi > Ik.lo)) continue;
      ++count;
      ++rep.flagged;
      if (rep.min_flagged_m == 0) rep.min_flagged_m = mu;
      if (m < rep.m_k) {
        rep.structural_ok = false;
        rep.detail += "flagged " + n.get_str() + "/" + m.get_str() + " has m < m_k; ";
      }
      parts.push_back({std::max(J.lo, Ik.lo), std::min(J.hi, Ik.hi)});
    }
    if (count > rep.max_count) {
      rep.max_count = count;
      rep.max_count_m = mu;
    }
    if (count > 0 && !(Rational(count) < 3 + Rational(m) * rep.interval_length)) {
      rep.structural_ok = false;
      rep.detail += "p_m bound fails at m=" + std::to_string(mu) + "; ";
    }
  }
  IntervalSet excluded = IntervalSet::from_intervals(std::move(parts));
  rep.excluded_exact = excluded.exact_measure();
  rep.excluded_tail = lemma_tail(gamma, tau, rep.interval_length, m_max);
  rep.dc_lower_bound = RealInterval(rep.interval_length - rep.excluded_exact) - rep.excluded_tail;
  const RealInterval target(rep.target);
  rep.pass = rep.dc_lower_bound.certainly_gt(target) && rep.structural_ok;
  if (!rep.dc_lower_bound.certainly_gt(target)) {
    RealInterval margin = RealInterval(rep.interval_length - rep.excluded_exact) - target;
    if (margin.certainly_gt(RealInterval(0L))) {
      rep.inconclusive = true;
      unsigned long N = m_max;
      while (N < (1UL << 40) && !lemma_tail(gamma, tau, rep.interval_length, N).certainly_lt(margin)) N *= 2;
      rep.suggested_m_max = N;
      rep.detail += "tail bound too coarse; rerun with m_max >= " + std::to_string(N) + "; ";
    }
  }
  return rep;
}

RealInterval part_one_series_bound(const Rational& gamma, const Rational& tau, size_t k) {
  if (gamma <= 0) throw std::invalid_argument("part_one_series_bound: gamma must be positive");
  RealInterval one(1L), two(2L);
  RealInterval phi = (sqrt(RealInterval(5L)) - one) / two;
  RealInterval L = gamma >= 1 ? RealInterval(0L) : log(one / RealInterval(gamma));
  RealInterval km1(static_cast<long>(k) - 1);
  RealInterval first = L * exp(km1 * log(phi)) / (one - phi);
  RealInterval second = two * RealInterval(tau) * exp(km1 / two * log(phi)) / (one - sqrt(phi));
  return first + second;
}

RankBrunoReport rank_bruno_check(const Rational& gamma, const Rational& tau, const Rational& M, size_t k,
                                          size_t samples) {
  if (gamma <= 0 || tau < 0 || M <= 0) throw std::invalid_argument("rank_bruno_check: parameters must be positive");
  RankBrunoReport rep;
  const RealInterval Mi(M);
  size_t kb = 1;
  while (!part_one_series_bound(gamma, tau, kb).certainly_le(Mi)) {
    if (++kb > 100000) throw std::runtime_error("rank_bruno_check: k_bar search did not terminate");
  }
  rep.k_bar = kb;
  rep.series_bound = part_one_series_bound(gamma, tau, kb);
  rep.k_used = std::max(std::max<size_t>(k, 1), kb);

  bool ok = true;
  size_t certified = 0;
  for (size_t j = 0; j < samples; ++j) {
    PartOneSample s;
    s.sequence.prefix.push_back(0);
    for (size_t i = 0; i < rep.k_used + j; ++i) s.sequence.prefix.push_back(1);
    s.sequence.prefix.push_back(BigInt(2 + static_cast<long>(j)));
    s.sequence.period = {BigInt(1)};
    auto cf = contfrac::cf_expand(s.sequence, rep.k_used + j + 40);
    TailModel tail = TailModel::bounded(*cf.tail_quotient_bound);
    try {
      s.dc = member_C(cf, 1 / gamma, tau, 200, tail);
    } catch (const Undecidable& e) {
      s.dc.detail = e.what();
    }
    s.bruno = member_S(cf, M, tail);
    if (s.dc.verdict == Verdict::in) {
      ++certified;
      if (s.bruno.verdict != Verdict::in) ok = false;
    }
    rep.samples.push_back(std::move(s));
  }
  rep.pass = ok;
  rep.detail = std::to_string(certified) + " of " + std::to_string(samples) + " samples certified in DC";
  return rep;
}

}  // namespace sdlab::arith
