#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdlab/arith_sets.hpp"
#include "sdlab/contfrac.hpp"
#include "sdlab/domains.hpp"
#include "sdlab/solvers.hpp"

namespace sdlab::lab {

using series::CSeries;
using series::Index;

enum class Problem { L, S, C };
Problem parse_problem(const std::string& name);
std::string to_string(Problem p);

/// Experiment knobs shared by the subcommands. Every numeric field must be positive.
struct ExperimentConfig {
  int precision_bits = 256;
  Index N_power = 24;
  Index N_fourier = 16;
  int q_samples = 32;
  int theta_samples = 512;
  double tol = 1e-12;
  std::string output_dir = ".";
  std::uint64_t seed = 20240611;
  size_t cf_depth = 40;
  unsigned long m_max = 40;
  double g_radius = 1.0;      // radius of analyticity declared for g
  double siegel_delta = 1.0;  // loss exponent in the Siegel radius R e^{-(3+delta)M}
  void validate() const;
};

/// Missing inputs for an experiment: too few certified samples, or a refused point.
struct ExperimentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
/// Too few certified samples for a report.
struct InsufficientSamples : ExperimentError {
  using ExperimentError::ExperimentError;
};
/// Membership of the boundary point could not be decided at the available depth.
struct Undecided : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// How a membership verdict was obtained.
struct DomainProvenance {
  std::string set;
  std::string verdict;
  unsigned long m_max = 0;
  size_t depth = 0;
  std::string tail_model;
  std::string detail;
};

// ---------------------------------------------------------------------------
// Whitney probe

struct WhitneyPair {
  Complex q1;
  Complex q2;
  double distance = 0.0;
  double defect_ratio = 0.0;  // ||f(q2) - f(q1) - (q2 - q1) f'(q1)|| / |q2 - q1|
};

struct WhitneyAnchor {
  Complex q1;
  bool interior = false;   // |q1| <= 1/2
  std::vector<WhitneyPair> pairs;  // coarse to fine
  double fitted_slope = 0.0;        // log-log slope of ratio against distance
  bool slope_fitted = false;
  bool flagged = false;             // ratio fails to decay
};

struct WhitneyReport {
  Problem problem = Problem::L;
  double M = 0.0;
  double norm_radius = 0.0;  // ||.|| is sum |c_k| r^k with this r
  std::vector<WhitneyAnchor> anchors;
  size_t flagged = 0;
  DomainProvenance provenance;
};

/// Samples anchors in the truncated domain K_M (half with |q| <= 1/2, half near the circle)
/// and measures the first-order Whitney defect across dyadic scales. f'(q1) comes from dual
/// numbers carried through the coefficient recurrence.
WhitneyReport whitney_probe(Problem problem, double M, int sample_count, int scales, const CSeries& g,
                            const ExperimentConfig& cfg);

// ---------------------------------------------------------------------------
// Non-tangential limits and pseudocontinuation

struct BoundaryPoint {
  contfrac::CfSource source;
  arith::SetKind set = arith::SetKind::S;
  Rational M{10};
  Rational tau{1};
};

/// Certifies x in the requested set and returns its angle in [0, 1). Throws Undecided when
/// membership is undecided and ExperimentError when x is rational or outside the set.
double certify_boundary_point(const BoundaryPoint& point, const ExperimentConfig& cfg, DomainProvenance& prov);

struct LimitRow {
  int j = 0;
  double t = 0.0;  // |r - 1|
  Complex q;
  double difference = 0.0;  // ||h(q_j) - h(q_{j+1})|| on |z| <= r_cmp (0 in the last row)
};

struct LimitReport {
  Problem problem = Problem::L;
  double x = 0.0;
  double r_cmp = 0.0;
  std::vector<LimitRow> rows;
  bool cauchy = false;  // differences shrink by a factor <= 0.9 per step over the final half
  DomainProvenance provenance;
};

/// Sup of the difference of two solutions on |z| <= r, as a maximum over |z| = r.
double solution_distance(const CSeries& a, const CSeries& b, double r, Index grid);

/// Solves at q_j = (1 -+ t_j) e^{2 pi i x}, t_j = d 2^{-j}, j = 0..steps-1.
LimitReport nontangential_limit_experiment(Problem problem, const BoundaryPoint& point, double c, double d,
                                           int steps, const CSeries& g, const ExperimentConfig& cfg,
                                           bool inside = true);
/// Same over an explicit approach path; refuses when a point leaves the cone.
LimitReport nontangential_limit_experiment(Problem problem, const BoundaryPoint& point, double c, double d,
                                           const std::vector<Complex>& path, const CSeries& g,
                                           const ExperimentConfig& cfg);

struct PseudoRow {
  int j = 0;
  Complex q_inner;
  Complex q_outer;
  double gap = 0.0;
};

struct PseudoReport {
  Problem problem = Problem::L;
  double x = 0.0;
  double r_cmp = 0.0;
  std::vector<PseudoRow> rows;
  bool monotone = false;      // gaps non-increasing
  double final_ratio = 0.0;   // last gap / first gap (0 when the first gap is 0)
  DomainProvenance provenance;
};

/// Compares solutions at (1 - 2^{-j}) e^{2 pi i x} and (1 + 2^{-j}) e^{2 pi i x}, j = j_lo..j_hi.
PseudoReport pseudocontinuation_demo(Problem problem, const BoundaryPoint& point, int j_lo, int j_hi,
                                     const CSeries& g, const ExperimentConfig& cfg);

// ---------------------------------------------------------------------------
// Verifications

struct BestApproxSummary {
  size_t depth = 0;
  size_t checked = 0;  // candidates n/m tested against the law of best approximation
  size_t passed = 0;
  size_t failed = 0;
  size_t undecidable = 0;
  size_t skipped = 0;  // convergents and candidates beyond m_{depth}
  contfrac::GapReport gaps;
  bool pass() const { return failed == 0 && undecidable == 0 && gaps.status == contfrac::Status::pass; }
};

/// Gap inequalities plus the law of best approximation for n in {floor(m x), floor(m x) + 1}
/// over every m <= m_limit and `extra` random m in (m_limit, m_depth], each compared with
/// the convergent of index k where m_k < m <= m_{k+1}.
BestApproxSummary verify_best_approximation(const contfrac::CfSource& source, size_t depth, unsigned long m_limit,
                                            size_t extra, std::mt19937_64& rng, unsigned bits = 256);

/// Coefficients h(q, .) for Problem L or S in floating point.
CSeries solve_power(Problem problem, const CSeries& g, Complex q, Index N);
/// Certified radius R e^{-3M} (L) or R e^{-(3+delta)M} (S).
double certified_radius(Problem problem, double M, const ExperimentConfig& cfg);

}  // namespace sdlab::lab
