#pragma once

#include <string>
#include <vector>

#include "sdlab/arith_sets.hpp"
#include "sdlab/numeric.hpp"

namespace sdlab::domains {

/// x -> dist(x, A) for A = [0,1] minus a finite union of open intervals, extended 1-periodically.
/// The endpoints 0 and 1 count as points of A.
class DistanceProfile {
 public:
  DistanceProfile() = default;
  explicit DistanceProfile(arith::IntervalSet complement) : complement_(std::move(complement)) {}

  const arith::IntervalSet& complement() const { return complement_; }
  Rational operator()(const Rational& x) const;
  double operator()(double x) const;
  /// Largest value of the profile (half the longest complement interval).
  Rational max_value() const;

 private:
  arith::IntervalSet complement_;
};

/// Open square {x + iy : lo < x < hi, |y| < min(x - lo, hi - x)} over a complement interval.
struct Diamond {
  Rational lo;
  Rational hi;
  Rational apex() const { return (hi - lo) / 2; }
  Rational center() const { return (lo + hi) / 2; }
  bool contains(const Rational& x, const Rational& y) const;
  bool contains(double x, double y) const;
};

/// Nearest integer translate of x into [0, 1).
double canonical(double x);
Rational canonical(const Rational& x);

/// z = log(q) / (2 pi i) with Re z in [0, 1).
Complex rotation_coordinate(Complex q);

enum class SpecialPoint { zero, infinity };

class MultiplierDomain {
 public:
  MultiplierDomain() = default;
  explicit MultiplierDomain(DistanceProfile profile);

  const DistanceProfile& profile() const { return profile_; }
  const std::vector<Diamond>& diamonds() const { return diamonds_; }

  bool contains(SpecialPoint) const { return true; }
  /// |Im z| >= Phi(Re z) for z = log(q)/(2 pi i); q = 0 is in the domain.
  bool contains(Complex q) const;
  /// Exact test in the rotation coordinate z = x + iy.
  bool contains_rotation(const Rational& x, const Rational& y) const;
  /// Index of the diamond containing z = x + iy, or -1.
  long diamond_of(double x, double y) const;

 private:
  DistanceProfile profile_;
  std::vector<Diamond> diamonds_;
};

MultiplierDomain build_domain(const arith::IntervalSet& complement);

struct CurveVertex {
  double x;
  Complex q;
};

struct NestedPairCurves {
  std::vector<CurveVertex> inner;  // x -> e^{-2 pi Phi(x)} e^{2 pi i x}
  std::vector<CurveVertex> outer;  // x -> e^{+2 pi Phi(x)} e^{2 pi i x}
  int samples_per_interval = 0;
  double chord_error = 0.0;  // bound on the distance between each chord and its arc
  double inner_length = 0.0;
  double outer_length = 0.0;
};

/// Polylines with vertices on the two curves; every interval endpoint and apex is a vertex.
NestedPairCurves curves(const MultiplierDomain& domain, int samples_per_interval, int arc_samples = 256);

struct QTooClose : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MelnikovResult {
  double value = 0.0;
  double error_estimate = 0.0;
  double margin = 0.0;      // lower bound on the distance from q to the summed contours
  size_t components = 0;    // diamonds summed
  size_t omitted = 0;       // diamonds beyond l_max
  double omitted_bound = 0.0;  // crude bound for the omitted diamonds
  std::string note;
};

/// Partial sum over the l_max longest diamonds of the integral of |d zeta| / |zeta - q|^3 over
/// the image of the diamond boundary, by Gauss-Legendre quadrature on each edge.
MelnikovResult melnikov_sum(const MultiplierDomain& domain, Complex q, size_t l_max, int quad_points,
                            double min_margin = 1e-3);

/// c |theta - x| <= |r - 1| <= d for q = r e^{2 pi i theta}, theta taken nearest to x.
struct NontangentialCone {
  double x;
  double c;
  double d;
  bool operator()(Complex q) const;
  /// Point on the radial segment through e^{2 pi i x} at |r - 1| = t.
  Complex radial(double t, bool inside) const;
};

NontangentialCone nontangential_cone(double x, double c, double d);

}  // namespace sdlab::domains
