#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sdlab/numeric.hpp"

namespace sdlab::contfrac {

/// Quadratic surd (p + q*sqrt(d)) / r with d > 0 not a perfect square.
struct Surd {
  BigInt p{0};
  BigInt q{1};
  BigInt d{2};
  BigInt r{1};

  static Surd sqrt_of(long d) { return {0, 1, d, 1}; }
  /// (1 + sqrt5)/2.
  static Surd golden() { return {1, 1, 5, 2}; }
  /// (sqrt5 - 1)/2 = [0; 1, 1, 1, ...].
  static Surd golden_conjugate() { return {-1, 1, 5, 2}; }

  void validate() const;
  /// Rational enclosure of width at most 2^-bits, computed from an integer square root.
  RationalInterval enclosure(unsigned bits) const;
  double approx() const;
  std::string to_string() const;
};

/// Explicit partial quotients a_0, a_1, ...; when `period` is non-empty it repeats forever.
struct QuotientSequence {
  std::vector<BigInt> prefix;
  std::vector<BigInt> period;

  BigInt at(size_t k) const;
  /// Number of quotients known, or nullopt when the sequence is infinite (periodic).
  std::optional<size_t> known_length() const;
  void validate() const;
};

using CfSource = std::variant<Rational, Surd, QuotientSequence>;

struct Convergent {
  BigInt n;
  BigInt m;
  Rational value() const { return make_rational(n, m); }
};

/// Partial quotients a_0..a_K with convergent table (n_k, m_k).
struct ContinuedFraction {
  std::vector<BigInt> a;
  std::vector<Convergent> conv;
  bool exhausted = false;
  /// Bound on every quotient beyond the computed ones when the source determines one
  /// (period maximum for surds and periodic sequences).
  std::optional<BigInt> tail_quotient_bound;
  CfSource source;

  size_t size() const { return a.size(); }
  size_t last_index() const { return a.size() - 1; }
  /// Rational enclosure of the expanded number: exact for rationals, integer-sqrt based for
  /// surds, convergent bracket for quotient sequences.
  RationalInterval enclosure(unsigned bits = 256) const;
};

/// Expands a_0..a_depth (fewer when a rational input terminates).
ContinuedFraction cf_expand(const CfSource& x, size_t depth);

/// Evaluates [a_0; a_1, ..., a_k] as an exact rational by backward recursion.
Rational evaluate(const std::vector<BigInt>& a, size_t k);

enum class Status { pass, fail, not_applicable, undecidable };
std::string to_string(Status s);

struct BestApproxReport {
  Status status = Status::undecidable;
  std::string note;
  RationalInterval lhs;  // |m x - n|
  RationalInterval rhs;  // |m_k x - n_k|
};

/// Law of best approximation: m <= m_{k+1} and n/m not a convergent => |m x - n| > |m_k x - n_k|.
BestApproxReport check_best_approx(const ContinuedFraction& cf, const Rational& candidate,
                                   const RationalInterval& x, size_t k);

enum class TailKind { none, quotient_bounded };

struct TailModel {
  TailKind kind = TailKind::none;
  BigInt quotient_bound{1};  // A with a_k <= A beyond the summed terms

  static TailModel none() { return {}; }
  static TailModel bounded(BigInt a) { return {TailKind::quotient_bounded, std::move(a)}; }
};

enum class BrunoMode { bruno, classical };

struct BrunoValue {
  RealInterval partial_sum;
  RealInterval tail_bound;  // upper bound on omitted terms in hi(); +inf when no tail model
  size_t depth = 0;
  bool rational = false;
  BrunoMode mode = BrunoMode::bruno;

  /// Enclosure of the full series value under the tail model.
  RealInterval total_upper() const { return partial_sum + tail_bound; }
};

/// Sum over k < depth of log a_{k+1}/m_k (classical: log m_{k+1}/m_k) with a tail bound.
BrunoValue bruno(const ContinuedFraction& cf, size_t depth, const TailModel& tail,
                 BrunoMode mode = BrunoMode::bruno, int precision = default_precision());

struct GapEntry {
  size_t k;
  bool bounds_ok;  // 1/(2 m_{k+1}) < |m_k x - n_k| < 1/m_{k+1}
  bool side_ok;    // n_k/m_k < x for even k, > x for odd k
  bool spacing_ok;  // |n_{k+1}/m_{k+1} - n_k/m_k| = 1/(m_k m_{k+1})
  double lower_margin;
  double upper_margin;
};

struct GapReport {
  Status status = Status::pass;
  std::vector<GapEntry> entries;
  std::string note;
};

/// Checks the convergent gap inequalities and alternation for every k >= 1 with m_{k+1} known.
GapReport convergent_gap_checks(const ContinuedFraction& cf, const RationalInterval& x);

/// F_0 = 0, F_1 = 1, ...
BigInt fibonacci(size_t k);

}  // namespace sdlab::contfrac
