#include "sdlab/lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace sdlab::lab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Rational to_rational(double v) { return Rational(mpq_class(v)); }

double weighted_norm(const CSeries& p, double r) {
  double total = 0.0, rk = 1.0;
  for (Index k = 0; k <= p.order(); ++k) {
    total += std::abs(p[k]) * rk;
    rk *= r;
  }
  return total;
}

/// Value and q-derivative of every coefficient of h(q, .).
series::PowerSeries<DualComplex> solve_dual(Problem problem, const CSeries& g, Complex q, Index N) {
  auto gd = g.map<DualComplex>([](const Complex& c) { return DualComplex(c); });
  const DualComplex qd(q, Complex(1.0));
  if (problem == Problem::L) return solvers::solve_L(gd, qd, N).h;
  return solvers::solve_S(gd, qd, N).h;
}

std::string set_name(arith::SetKind kind) {
  switch (kind) {
    case arith::SetKind::L: return "A^L";
    case arith::SetKind::S: return "A^S";
    case arith::SetKind::C: return "A^C";
    case arith::SetKind::DC: return "DC";
  }
  return "?";
}

void require_power_problem(Problem problem, const char* who) {
  if (problem == Problem::C) throw std::invalid_argument(std::string(who) + ": only problems L and S are supported");
}

}  // namespace

Problem parse_problem(const std::string& name) {
  if (name == "L" || name == "l") return Problem::L;
  if (name == "S" || name == "s") return Problem::S;
  if (name == "C" || name == "c") return Problem::C;
  throw std::invalid_argument("unknown problem '" + name + "' (expected L, S or C)");
}

std::string to_string(Problem p) {
  switch (p) {
    case Problem::L: return "L";
    case Problem::S: return "S";
    case Problem::C: return "C";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  if (precision_bits <= 0 || N_power <= 0 || N_fourier <= 0 || q_samples <= 0 || theta_samples <= 0 ||
      !(tol > 0.0) || cf_depth == 0 || m_max == 0 || !(g_radius > 0.0) || !(siegel_delta > 0.0))
    throw std::invalid_argument("experiment configuration: all numeric fields must be positive");
  if (output_dir.empty()) throw std::invalid_argument("experiment configuration: empty output path");
}

CSeries solve_power(Problem problem, const CSeries& g, Complex q, Index N) {
  require_power_problem(problem, "solve_power");
  if (problem == Problem::L) return solvers::solve_L(g, q, N).h;
  return solvers::solve_S(g, q, N).h;
}

double certified_radius(Problem problem, double M, const ExperimentConfig& cfg) {
  require_power_problem(problem, "certified_radius");
  return problem == Problem::L ? solvers::linear_radius(cfg.g_radius, M)
                               : solvers::siegel_radius(cfg.g_radius, M, cfg.siegel_delta);
}

WhitneyReport whitney_probe(Problem problem, double M, int sample_count, int scales, const CSeries& g,
                            const ExperimentConfig& cfg) {
  require_power_problem(problem, "whitney_probe");
  cfg.validate();
  if (sample_count < 1 || scales < 2) throw std::invalid_argument("whitney_probe: need samples >= 1 and scales >= 2");
  if (!(M > 0.0)) throw std::invalid_argument("whitney_probe: M must be positive");

  // A^L_M contains the complement of these exclusions; the same proxy serves Problem S
  auto complement = arith::complement_L_inner(to_rational(M), cfg.m_max);
  auto domain = domains::build_domain(complement);

  WhitneyReport rep;
  rep.problem = problem;
  rep.M = M;
  rep.norm_radius = certified_radius(problem, M, cfg) / 2.0;
  rep.provenance = {"K_M from A^L exclusions 1/(m e^{Mm})", "sampled", cfg.m_max, 0, "none",
                    std::to_string(complement.size()) + " excluded intervals"};

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Index N = cfg.N_power;
  const double base = 0.05;

  for (int i = 0; i < sample_count; ++i) {
    const bool interior = i % 2 == 0;
    WhitneyAnchor anchor;
    anchor.interior = interior;
    bool found = false;
    for (int attempt = 0; attempt < 200 && !found; ++attempt) {
      double r = interior ? 0.1 + 0.4 * unit(rng) : 1.0 - (0.02 + 0.08 * unit(rng));
      anchor.q1 = std::polar(r, kTwoPi * unit(rng));
      found = domain.contains(anchor.q1);
    }
    if (!found) continue;

    series::PowerSeries<DualComplex> f1;
    try {
      f1 = solve_dual(problem, g, anchor.q1, N);
    } catch (const solvers::Resonance&) {
      continue;
    }
    for (int s = 0; s < scales; ++s) {
      const double delta = base * std::ldexp(1.0, -s);
      for (int attempt = 0; attempt < 16; ++attempt) {
        Complex q2 = anchor.q1 + std::polar(delta, kTwoPi * unit(rng));
        if (!domain.contains(q2)) continue;
        CSeries f2;
        try {
          f2 = solve_power(problem, g, q2, N);
        } catch (const solvers::Resonance&) {
          continue;
        }
        CSeries defect(N);
        for (Index k = 0; k <= N; ++k) defect[k] = f2[k] - f1[k].v - (q2 - anchor.q1) * f1[k].d;
        anchor.pairs.push_back({anchor.q1, q2, delta, weighted_norm(defect, rep.norm_radius) / delta});
        break;
      }
    }
    if (anchor.pairs.size() < 2) continue;

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& p : anchor.pairs) {
      if (!(p.defect_ratio > 0.0)) continue;
      double lx = std::log(p.distance), ly = std::log(p.defect_ratio);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      ++n;
    }
    if (n >= 2) {
      anchor.fitted_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
      anchor.slope_fitted = true;
      anchor.flagged =
          anchor.fitted_slope < 0.5 || anchor.pairs.back().defect_ratio >= anchor.pairs.front().defect_ratio;
    }
    if (anchor.flagged) ++rep.flagged;
    rep.anchors.push_back(std::move(anchor));
  }
  if (rep.anchors.size() < static_cast<size_t>(std::max(1, sample_count / 2)))
    throw InsufficientSamples("whitney_probe: only " + std::to_string(rep.anchors.size()) + " of " +
                          std::to_string(sample_count) + " anchors produced certified pairs");
  return rep;
}

double certify_boundary_point(const BoundaryPoint& point, const ExperimentConfig& cfg, DomainProvenance& prov) {
  if (std::holds_alternative<Rational>(point.source))
    throw ExperimentError("rational x lies in no Diophantine set; refused");
  auto cf = contfrac::cf_expand(point.source, cfg.cf_depth);
  auto tail = cf.tail_quotient_bound ? contfrac::TailModel::bounded(*cf.tail_quotient_bound) : contfrac::TailModel::none();
  arith::Membership mem;
  switch (point.set) {
    case arith::SetKind::L: mem = arith::member_L(cf, point.M, tail); break;
    case arith::SetKind::S: mem = arith::member_S(cf, point.M, tail); break;
    case arith::SetKind::C: mem = arith::member_C(cf, point.M, point.tau, cfg.m_max, tail); break;
    case arith::SetKind::DC: throw std::invalid_argument("boundary point: use the C set with M = 1/gamma");
  }
  prov.set = set_name(point.set);
  prov.verdict = arith::to_string(mem.verdict);
  prov.m_max = point.set == arith::SetKind::C ? cfg.m_max : 0;
  prov.depth = mem.depth;
  prov.tail_model = tail.kind == contfrac::TailKind::none ? "none" : "a_k <= " + tail.quotient_bound.get_str();
  prov.detail = mem.detail;
  if (mem.verdict == arith::Verdict::undecided) throw Undecided("membership of x undecided: " + mem.detail);
  if (mem.verdict == arith::Verdict::out) throw ExperimentError("x is not in " + prov.set + ": " + mem.detail);
  return domains::canonical(to_double(cf.enclosure(128).lo));
}

double solution_distance(const CSeries& a, const CSeries& b, double r, Index grid) {
  return series::sup_norm_disk(a - b, r, grid).value;
}

LimitReport nontangential_limit_experiment(Problem problem, const BoundaryPoint& point, double c, double d,
                                           const std::vector<Complex>& path, const CSeries& g,
                                           const ExperimentConfig& cfg) {
  require_power_problem(problem, "nontangential_limit_experiment");
  cfg.validate();
  if (path.size() < 2) throw std::invalid_argument("nontangential_limit_experiment: need at least two points");
  LimitReport rep;
  rep.problem = problem;
  rep.x = certify_boundary_point(point, cfg, rep.provenance);
  auto cone = domains::nontangential_cone(rep.x, c, d);
  for (const auto& q : path)
    if (!cone(q)) throw ExperimentError("approach point leaves the non-tangential cone; refused");

  // all solutions share the certified radius, so half of it is a common comparison disk
  rep.r_cmp = certified_radius(problem, to_double(point.M), cfg) / 2.0;
  std::vector<CSeries> sols;
  for (const auto& q : path) sols.push_back(solve_power(problem, g, q, cfg.N_power));
  for (size_t j = 0; j < path.size(); ++j) {
    LimitRow row{static_cast<int>(j), std::abs(std::abs(path[j]) - 1.0), path[j], 0.0};
    if (j + 1 < path.size()) row.difference = solution_distance(sols[j], sols[j + 1], rep.r_cmp, cfg.theta_samples);
    rep.rows.push_back(row);
  }
  const size_t diffs = path.size() - 1;
  rep.cauchy = true;
  for (size_t j = std::max<size_t>(1, diffs / 2); j < diffs; ++j)
    if (rep.rows[j].difference > 0.9 * rep.rows[j - 1].difference) rep.cauchy = false;
  return rep;
}

LimitReport nontangential_limit_experiment(Problem problem, const BoundaryPoint& point, double c, double d,
                                           int steps, const CSeries& g, const ExperimentConfig& cfg, bool inside) {
  if (steps < 2) throw std::invalid_argument("nontangential_limit_experiment: need at least two steps");
  DomainProvenance scratch;
  double x = certify_boundary_point(point, cfg, scratch);
  auto cone = domains::nontangential_cone(x, c, d);
  std::vector<Complex> path;
  for (int j = 0; j < steps; ++j) path.push_back(cone.radial(d * std::ldexp(1.0, -j), inside));
  return nontangential_limit_experiment(problem, point, c, d, path, g, cfg);
}

PseudoReport pseudocontinuation_demo(Problem problem, const BoundaryPoint& point, int j_lo, int j_hi,
                                     const CSeries& g, const ExperimentConfig& cfg) {
  require_power_problem(problem, "pseudocontinuation_demo");
  cfg.validate();
  if (j_lo < 1 || j_hi <= j_lo) throw std::invalid_argument("pseudocontinuation_demo: need 1 <= j_lo < j_hi");
  PseudoReport rep;
  rep.problem = problem;
  rep.x = certify_boundary_point(point, cfg, rep.provenance);
  rep.r_cmp = certified_radius(problem, to_double(point.M), cfg) / 2.0;
  const Complex ray = std::polar(1.0, kTwoPi * rep.x);
  for (int j = j_lo; j <= j_hi; ++j) {
    double t = std::ldexp(1.0, -j);
    PseudoRow row{j, (1.0 - t) * ray, (1.0 + t) * ray, 0.0};
    row.gap = solution_distance(solve_power(problem, g, row.q_inner, cfg.N_power),
                                solve_power(problem, g, row.q_outer, cfg.N_power), rep.r_cmp, cfg.theta_samples);
    rep.rows.push_back(row);
  }
  rep.monotone = true;
  for (size_t i = 1; i < rep.rows.size(); ++i)
    if (rep.rows[i].gap > rep.rows[i - 1].gap) rep.monotone = false;
  const double first = rep.rows.front().gap;
  rep.final_ratio = first > 0.0 ? rep.rows.back().gap / first : 0.0;
  return rep;
}

BestApproxSummary verify_best_approximation(const contfrac::CfSource& source, size_t depth, unsigned long m_limit,
                                            size_t extra, std::mt19937_64& rng, unsigned bits) {
  BestApproxSummary out;
  auto cf = contfrac::cf_expand(source, depth);
  auto x = cf.enclosure(bits);
  out.gaps = contfrac::convergent_gap_checks(cf, x);
  if (cf.size() < 3) return out;
  out.depth = cf.last_index();
  const BigInt& top = cf.conv[out.depth].m;

  auto check_m = [&](const BigInt& m) {
    // smallest k >= 1 with m <= m_{k+1}
    size_t k = 1;
    while (k + 1 <= out.depth && cf.conv[k + 1].m < m) ++k;
    if (k + 1 > out.depth) {
      out.skipped += 2;
      return;
    }
    BigInt n0 = sdlab::floor(Rational(m) * x.lo);
    for (BigInt n : {n0, BigInt(n0 + 1)}) {
      auto rep = contfrac::check_best_approx(cf, make_rational(n, m), x, k);
      switch (rep.status) {
        case contfrac::Status::pass: ++out.passed; ++out.checked; break;
        case contfrac::Status::fail: ++out.failed; ++out.checked; break;
        case contfrac::Status::undecidable: ++out.undecidable; ++out.checked; break;
        case contfrac::Status::not_applicable: ++out.skipped; break;
      }
    }
  };
  for (unsigned long m = 1; m <= m_limit && BigInt(m) <= top; ++m) check_m(BigInt(m));
  if (top > m_limit) {
    gmp_randclass draw(gmp_randinit_default);
    draw.seed(static_cast<unsigned long>(rng()));
    const BigInt span = top - m_limit;
    for (size_t i = 0; i < extra; ++i) check_m(BigInt(m_limit + 1 + draw.get_z_range(span)));
  }
  return out;
}

}  // namespace sdlab::lab
