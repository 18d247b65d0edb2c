#pragma once

#include <string>
#include <vector>

#include "sdlab/contfrac.hpp"
#include "sdlab/numeric.hpp"

namespace sdlab::arith {

struct OpenInterval {
  Rational lo;
  Rational hi;
  Rational length() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo < x && x < hi; }
};

/// Finite disjoint union of open subintervals of (0,1) with exact endpoints, plus an upper
/// bound on the measure that the truncated construction may have missed.
class IntervalSet {
 public:
  IntervalSet() : tail_(0L) {}
  /// Clips every interval to (0,1) and merges overlapping ones. Intervals that only share an
  /// endpoint stay separate: the shared point is not covered.
  static IntervalSet from_intervals(std::vector<OpenInterval> raw, RealInterval tail = RealInterval(0L));

  const std::vector<OpenInterval>& intervals() const { return intervals_; }
  const RealInterval& tail_measure_bound() const { return tail_; }
  size_t size() const { return intervals_.size(); }
  bool empty() const { return intervals_.empty(); }

  Rational exact_measure() const;
  bool contains(const Rational& x) const;
  bool contains(double x) const;
  /// Index of the component containing x, or -1.
  long component_of(const Rational& x) const;
  long component_of(double x) const;
  /// Point-set inclusion of the unions.
  bool subset_of(const IntervalSet& other) const;
  /// Intersection with the open interval (lo, hi); the tail bound is carried over.
  IntervalSet restricted_to(const Rational& lo, const Rational& hi) const;

 private:
  std::vector<OpenInterval> intervals_;
  RealInterval tail_;
};

enum class Verdict { in, out, undecided };
std::string to_string(Verdict v);

struct Membership {
  Verdict verdict = Verdict::undecided;
  size_t depth = 0;  // convergent depth or denominator range actually examined
  std::string detail;
};

enum class SetKind { L, S, C, DC };

struct SetSpec {
  SetKind kind = SetKind::C;
  Rational M{10};
  Rational gamma{1, 100};
  Rational tau{1};
  /// Throws std::invalid_argument when the parameters violate the set's admissibility range.
  void validate() const;
};

/// sup_k log m_{k+1}/m_k <= M.
Membership member_L(const contfrac::ContinuedFraction& cf, const Rational& M, const contfrac::TailModel& tail);
/// Bruno series <= M.
Membership member_S(const contfrac::ContinuedFraction& cf, const Rational& M, const contfrac::TailModel& tail);
/// m^{-2-tau} |x - n/m|^{-1} <= M for every n/m, scanned exhaustively for m <= m_max and
/// certified beyond m_max through the convergent structure when a quotient bound is known.
/// Throws Undecidable when the enclosure of x cannot resolve a comparison.
Membership member_C(const contfrac::ContinuedFraction& cf, const Rational& M, const Rational& tau,
                    unsigned long m_max, const contfrac::TailModel& tail = {});

/// Radius c / m^{2+tau}, rounded up to a dyadic rational (exact when tau is an integer).
Rational exclusion_radius(const Rational& c, const Rational& tau, unsigned long m);

/// Union of J(n/m) = (n/m - r_m, n/m + r_m), r_m = M^{-1} m^{-2-tau}, over reduced n/m with
/// 0 <= n <= m <= m_max, clipped to (0,1).
IntervalSet complement_C(const Rational& M, const Rational& tau, unsigned long m_max);
/// Same construction with r_m = gamma m^{-2-tau}.
IntervalSet dc_complement(const Rational& gamma, const Rational& tau, unsigned long m_max);
/// Exclusions of radius 1/(m e^{M m}): the complement of a set contained in A_M^L.
IntervalSet complement_L_inner(const Rational& M, unsigned long m_max);

/// Upper bound on 2 zeta(1+tau)/M as an enclosure.
RealInterval measure_bound_C(const Rational& M, const Rational& tau);

struct RankInterval {
  std::vector<BigInt> quotients;  // a_1..a_k
  Rational lo;
  Rational hi;
  contfrac::Convergent last;  // n_k/m_k
  contfrac::Convergent prev;  // n_{k-1}/m_{k-1}
  Rational length() const { return hi - lo; }
};

/// Cylinder of numbers in (0,1) whose first k partial quotients are a_1..a_k.
RankInterval rank_interval(const std::vector<BigInt>& quotients);
/// I_k = I(1, ..., 1).
RankInterval golden_rank_interval(size_t k);

struct RankMeasureReport {
  bool pass = false;
  bool inconclusive = false;
  bool structural_ok = true;
  Rational interval_length;      // |I_k|
  Rational excluded_exact;       // measure of the union of J(n/m) over m <= m_max, within I_k
  RealInterval excluded_tail;    // bound for m > m_max
  RealInterval dc_lower_bound;   // |I_k| - excluded - tail
  Rational target;               // (1 - 26 gamma)|I_k|
  size_t flagged = 0;            // rationals with J(n/m) meeting I_k
  unsigned long min_flagged_m = 0;
  BigInt m_k;
  unsigned long max_count_m = 0;  // denominator achieving the largest p_m
  unsigned long max_count = 0;
  unsigned long suggested_m_max = 0;
  std::string detail;
};

/// |DC_{gamma,tau} cap I_k| > (1 - 26 gamma)|I_k| with the structural checks from the proof.
RankMeasureReport rank_measure_check(const Rational& gamma, const Rational& tau, size_t k, unsigned long m_max);

struct PartOneSample {
  contfrac::QuotientSequence sequence;
  Membership dc;     // membership in DC_{gamma,tau} (checked as A^C with M = 1/gamma)
  Membership bruno;  // membership in A_M^S
};

struct RankBrunoReport {
  size_t k_bar = 1;
  RealInterval series_bound;  // explicit series bound at k_bar
  size_t k_used = 1;
  std::vector<PartOneSample> samples;
  bool pass = false;
  std::string detail;
};

/// Explicit series bound sum_{l >= k}(log(1/gamma) phi^{l-1} + 2 tau phi^{(l-1)/2}) in closed form.
RealInterval part_one_series_bound(const Rational& gamma, const Rational& tau, size_t k);

/// Finds k_bar with the series bound <= M and certifies sampled points of DC cap I_k in A_M^S.
RankBrunoReport rank_bruno_check(const Rational& gamma, const Rational& tau, const Rational& M,
                                          size_t k, size_t samples = 4);

}  // namespace sdlab::arith
