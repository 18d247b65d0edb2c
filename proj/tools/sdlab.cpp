// Command-line front end. Exit codes: 0 ok, 1 invalid arguments, 2 undecided or inconclusive,
// 3 numerical failure.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include "sdlab/io.hpp"

using namespace sdlab;
namespace fs = std::filesystem;
using series::Index;

namespace {

enum Exit { kOk = 0, kInvalid = 1, kUndecided = 2, kNumerical = 3 };

/// Resolves an output name against the configured directory; absolute paths pass through.
std::string out_path(const lab::ExperimentConfig& cfg, const std::string& name) {
  fs::path p(name);
  if (p.is_absolute() || cfg.output_dir == ".") return p.string();
  fs::create_directories(cfg.output_dir);
  return (fs::path(cfg.output_dir) / p).string();
}

void emit(const lab::ExperimentConfig& cfg, const std::string& name, const std::string& text) {
  if (name.empty()) return;
  auto path = out_path(cfg, name);
  io::write_file(path, text);
  std::cout << "wrote " << path << "\n";
}

void emit_json(const lab::ExperimentConfig& cfg, const std::string& name, const io::Json& j) {
  emit(cfg, name, j.dump(2) + "\n");
}

arith::SetKind parse_set_kind(const std::string& s) {
  if (s == "L") return arith::SetKind::L;
  if (s == "S") return arith::SetKind::S;
  if (s == "C") return arith::SetKind::C;
  if (s == "DC") return arith::SetKind::DC;
  throw std::invalid_argument("unknown set kind '" + s + "' (expected L, S, C or DC)");
}

struct SetArgs {
  std::string kind = "C";
  std::string M = "10";
  std::string tau = "1";
  std::string gamma = "1/100";
  unsigned long mmax = 200;

  void add(CLI::App* app) {
    app->add_option("--kind", kind, "set kind: C, DC or L (L uses the inner exclusions)")->capture_default_str();
    app->add_option("--M", M, "bound M (rational)")->capture_default_str();
    app->add_option("--tau", tau, "exponent tau (rational)")->capture_default_str();
    app->add_option("--gamma", gamma, "gamma for DC (rational)")->capture_default_str();
    app->add_option("--mmax", mmax, "largest denominator enumerated")->capture_default_str();
  }

  arith::IntervalSet build() const {
    arith::SetSpec spec{parse_set_kind(kind), parse_rational(M), parse_rational(gamma), parse_rational(tau)};
    switch (spec.kind) {
      case arith::SetKind::C: spec.validate(); return arith::complement_C(spec.M, spec.tau, mmax);
      case arith::SetKind::DC: spec.validate(); return arith::dc_complement(spec.gamma, spec.tau, mmax);
      case arith::SetKind::L: return arith::complement_L_inner(spec.M, mmax);
      case arith::SetKind::S: break;
    }
    throw std::invalid_argument("no explicit complement construction for A^S; use --kind L, C or DC");
  }
};

struct BoundaryArgs {
  std::string x = "golden-conjugate";
  std::string set;
  std::string M = "1";
  std::string tau = "1";

  void add(CLI::App* app) {
    app->add_option("--x", x, "boundary angle: sqrt:d, golden, golden-conjugate, surd:p,q,d,r, rational:p/q")
        ->capture_default_str();
    app->add_option("--set", set, "set certifying x: L, S or C (default: the problem's own set)");
    app->add_option("--M", M, "bound M of the certifying set (rational)")->capture_default_str();
    app->add_option("--tau", tau, "tau for --set C")->capture_default_str();
  }

  lab::BoundaryPoint build(lab::Problem problem) const {
    arith::SetKind kind = set.empty() ? (problem == lab::Problem::S ? arith::SetKind::S : arith::SetKind::L)
                                      : parse_set_kind(set);
    return {io::parse_source(x), kind, parse_rational(M), parse_rational(tau)};
  }
};

std::string join(const std::vector<BigInt>& a, size_t limit) {
  std::string s;
  for (size_t i = 0; i < a.size() && i < limit; ++i) s += (i ? "," : "") + a[i].get_str();
  if (a.size() > limit) s += ",...";
  return s;
}

double max_abs(const series::CSeries& r) {
  double worst = 0.0;
  for (Index k = 0; k <= r.order(); ++k) worst = std::max(worst, std::abs(r[k]));
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sdlab: small-divisor laboratory"};
  app.require_subcommand(1);
  app.fallthrough();

  lab::ExperimentConfig cfg;
  std::string config_path;
  std::optional<int> precision;
  std::optional<std::uint64_t> seed;
  std::optional<long> n_power;
  std::optional<int> theta_samples;
  std::optional<size_t> cf_depth;
  std::optional<unsigned long> m_max;
  std::optional<std::string> output_dir;
  app.add_option("--config", config_path, "flat key = value file; flags override its entries");
  app.add_option("--precision", precision, "MPFR precision in bits (default 256, or SDLAB_PRECISION)");
  app.add_option("--seed", seed, "RNG seed (default 20240611)");
  app.add_option("--n-power", n_power, "power-series truncation order (default 24)");
  app.add_option("--theta-samples", theta_samples, "circle/strip grid size (default 512)");
  app.add_option("--cf-depth", cf_depth, "continued-fraction depth used for membership (default 40)");
  app.add_option("--m-max", m_max, "denominator cutoff for truncated sets (default 40)");
  app.add_option("--output-dir", output_dir, "directory for relative output paths (default .)");

  // cf
  auto* cf_cmd = app.add_subcommand("cf", "continued-fraction expansion and convergent table");
  std::string cf_x = "sqrt:2", cf_csv;
  size_t cf_depth_arg = 10;
  cf_cmd->add_option("--surd,--x", cf_x, "number spec")->capture_default_str();
  cf_cmd->add_option("--depth", cf_depth_arg, "number of quotients after a_0")->capture_default_str();
  cf_cmd->add_option("--csv", cf_csv, "write the convergent table as CSV");

  // bruno
  auto* bruno_cmd = app.add_subcommand("bruno", "Bruno series with a certified tail bound");
  std::string bruno_x = "sqrt:2";
  size_t bruno_depth = 30;
  bool bruno_classical = false;
  bruno_cmd->add_option("--x", bruno_x, "number spec")->capture_default_str();
  bruno_cmd->add_option("--depth", bruno_depth, "terms summed")->capture_default_str();
  bruno_cmd->add_flag("--classical", bruno_classical, "use log m_{k+1} in place of log a_{k+1}");

  // set
  auto* set_cmd = app.add_subcommand("set", "truncated complement of a Diophantine-type set");
  SetArgs set_args;
  set_args.add(set_cmd);
  std::string set_json, set_csv;
  set_cmd->add_option("--export", set_json, "write the interval set as JSON");
  set_cmd->add_option("--csv", set_csv, "write the interval set as CSV");

  // domain
  auto* dom_cmd = app.add_subcommand("domain", "complex multiplier domain K built from a set");
  SetArgs dom_args;
  dom_args.add(dom_cmd);
  int dom_samples = 16;
  std::string dom_curves, dom_diamonds, dom_contains, dom_melnikov;
  size_t dom_lmax = 10;
  int dom_quad = 16;
  dom_cmd->add_option("--samples", dom_samples, "curve vertices per complement interval")->capture_default_str();
  dom_cmd->add_option("--curves", dom_curves, "write the nested pair of curves as CSV");
  dom_cmd->add_option("--diamonds", dom_diamonds, "write the diamonds as JSON");
  dom_cmd->add_option("--contains", dom_contains, "test membership of a q expression");
  dom_cmd->add_option("--melnikov", dom_melnikov, "partial Melnikov sum at a q expression");
  dom_cmd->add_option("--lmax", dom_lmax, "diamonds summed")->capture_default_str();
  dom_cmd->add_option("--quad", dom_quad, "Gauss-Legendre nodes per edge")->capture_default_str();

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "solve Problem L, S or C at one multiplier");
  std::string solve_problem = "L", solve_q, solve_g, solve_out;
  std::string solve_eps = "0";
  double solve_R = 1.0;
  std::optional<double> solve_Lambda, solve_M;
  bool solve_exact = false, solve_certify = false;
  solve_cmd->add_option("--problem", solve_problem, "L, S or C")->capture_default_str();
  solve_cmd->add_option("--q", solve_q, "multiplier expression (exact: 're' or 're,im' rationals)")->required();
  solve_cmd->add_option("--g", solve_g, "poly:k=c,... for L/S, modes:k[=c],... for C")->required();
  solve_cmd->add_option("--eps", solve_eps, "perturbation size for C")->capture_default_str();
  solve_cmd->add_option("--R", solve_R, "strip width parameter for C")->capture_default_str();
  solve_cmd->add_option("--Lambda", solve_Lambda, "lower bound on |Im alpha| for C (default |Im alpha|/2)");
  solve_cmd->add_option("--M", solve_M, "declare q in K_M and record the radius certificate (L/S)");
  solve_cmd->add_flag("--exact", solve_exact, "exact rational arithmetic (L/S)");
  solve_cmd->add_flag("--certify", solve_certify,
                      "C: fail with exit 3 unless the contraction certificate holds (default: fall back to an "
                      "uncertified run)");
  solve_cmd->add_option("--out", solve_out, "write the solution as JSON");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "arithmetic verifications");
  std::string verify_what = "rank-measure", verify_gamma = "1/100", verify_tau = "1", verify_M = "10", verify_x = "sqrt:2";
  size_t verify_k = 3;
  unsigned long verify_mmax = 400;
  verify_cmd->add_option("what", verify_what, "rank-measure, rank-bruno, rank, measure or best-approx")->capture_default_str();
  verify_cmd->add_option("--gamma", verify_gamma, "gamma")->capture_default_str();
  verify_cmd->add_option("--tau", verify_tau, "tau")->capture_default_str();
  verify_cmd->add_option("--M", verify_M, "M")->capture_default_str();
  verify_cmd->add_option("--k", verify_k, "rank or depth")->capture_default_str();
  verify_cmd->add_option("--mmax", verify_mmax, "denominator cutoff")->capture_default_str();
  verify_cmd->add_option("--x", verify_x, "number spec for best-approx")->capture_default_str();

  // whitney
  auto* whit_cmd = app.add_subcommand("whitney", "Whitney-defect probe on the truncated domain");
  std::string whit_problem = "L", whit_g = "poly:2=1", whit_out;
  double whit_M = 1.0;
  int whit_samples = 8, whit_scales = 6;
  whit_cmd->add_option("--problem", whit_problem, "L or S")->capture_default_str();
  whit_cmd->add_option("--g", whit_g, "poly:k=c,...")->capture_default_str();
  whit_cmd->add_option("--M", whit_M, "domain parameter M")->capture_default_str();
  whit_cmd->add_option("--samples", whit_samples, "anchors")->capture_default_str();
  whit_cmd->add_option("--scales", whit_scales, "dyadic scales per anchor")->capture_default_str();
  whit_cmd->add_option("--out", whit_out, "write the report as JSON");

  // limit
  auto* lim_cmd = app.add_subcommand("limit", "non-tangential limit experiment");
  std::string lim_problem = "L", lim_g = "poly:2=1", lim_csv, lim_json;
  BoundaryArgs lim_x;
  lim_x.add(lim_cmd);
  double lim_c = 1.0, lim_d = 0.5;
  int lim_steps = 10;
  bool lim_outside = false;
  lim_cmd->add_option("--problem", lim_problem, "L or S")->capture_default_str();
  lim_cmd->add_option("--g", lim_g, "poly:k=c,...")->capture_default_str();
  lim_cmd->add_option("--c", lim_c, "cone aperture c")->capture_default_str();
  lim_cmd->add_option("--d", lim_d, "cone depth d in (0,1)")->capture_default_str();
  lim_cmd->add_option("--steps", lim_steps, "dyadic steps")->capture_default_str();
  lim_cmd->add_flag("--outside", lim_outside, "approach from |q| > 1");
  lim_cmd->add_option("--csv", lim_csv, "write the convergence table as CSV");
  lim_cmd->add_option("--out", lim_json, "write the report as JSON");

  // pseudo
  auto* pseudo_cmd = app.add_subcommand("pseudo", "interior/exterior comparison along a radial ray");
  std::string pseudo_problem = "L", pseudo_g = "poly:2=1", pseudo_csv, pseudo_json;
  BoundaryArgs pseudo_x;
  pseudo_x.add(pseudo_cmd);
  int pseudo_lo = 3, pseudo_hi = 12;
  pseudo_cmd->add_option("--problem", pseudo_problem, "L or S")->capture_default_str();
  pseudo_cmd->add_option("--g", pseudo_g, "poly:k=c,...")->capture_default_str();
  pseudo_cmd->add_option("--from", pseudo_lo, "first j (distance 2^-j)")->capture_default_str();
  pseudo_cmd->add_option("--to", pseudo_hi, "last j")->capture_default_str();
  pseudo_cmd->add_option("--csv", pseudo_csv, "write the gap table as CSV");
  pseudo_cmd->add_option("--out", pseudo_json, "write the report as JSON");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "solution size over a circle of multipliers");
  std::string sweep_problem = "L", sweep_g = "poly:2=1", sweep_csv;
  double sweep_radius = 0.9, sweep_r = 0.25;
  sweep_cmd->add_option("--problem", sweep_problem, "L or S")->capture_default_str();
  sweep_cmd->add_option("--g", sweep_g, "poly:k=c,...")->capture_default_str();
  sweep_cmd->add_option("--radius", sweep_radius, "|q| on the swept circle")->capture_default_str();
  sweep_cmd->add_option("--r", sweep_r, "disk radius for the solution norm")->capture_default_str();
  sweep_cmd->add_option("--csv", sweep_csv, "write the sweep as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    cfg.precision_bits = io::precision_from_env(cfg.precision_bits);
    if (!config_path.empty()) io::apply_config(io::read_config(config_path), cfg);
    if (precision) cfg.precision_bits = *precision;
    if (seed) cfg.seed = *seed;
    if (n_power) cfg.N_power = *n_power;
    if (theta_samples) cfg.theta_samples = *theta_samples;
    if (cf_depth) cfg.cf_depth = *cf_depth;
    if (m_max) cfg.m_max = *m_max;
    if (output_dir) cfg.output_dir = *output_dir;
    cfg.validate();
    set_default_precision(cfg.precision_bits);

    if (*cf_cmd) {
      auto cf = contfrac::cf_expand(io::parse_source(cf_x), cf_depth_arg);
      std::cout << "x = " << io::describe(cf.source) << "\n";
      std::cout << "quotients [" << join(cf.a, 64) << "]" << (cf.exhausted ? " (terminates)" : "") << "\n";
      const auto& last = cf.conv.back();
      std::cout << "last convergent " << last.n.get_str() << "/" << last.m.get_str() << "\n";
      emit(cfg, cf_csv, io::cf_table_csv(cf));
    } else if (*bruno_cmd) {
      auto cf = contfrac::cf_expand(io::parse_source(bruno_x), bruno_depth + 1);
      auto tail = cf.tail_quotient_bound ? contfrac::TailModel::bounded(*cf.tail_quotient_bound)
                                         : contfrac::TailModel::none();
      auto b = contfrac::bruno(cf, std::min(bruno_depth, cf.last_index()), tail,
                               bruno_classical ? contfrac::BrunoMode::classical : contfrac::BrunoMode::bruno,
                               cfg.precision_bits);
      std::cout << "partial sum " << b.partial_sum << " over " << b.depth << " terms\n";
      std::cout << "tail bound " << b.tail_bound.hi_string() << "\n";
      std::cout << "total <= " << b.total_upper().hi_string() << "\n";
    } else if (*set_cmd) {
      auto set = set_args.build();
      std::cout << set.size() << " intervals, exact measure " << set.exact_measure() << " ~ "
                << to_double(set.exact_measure()) << ", tail bound " << set.tail_measure_bound().hi_string(8)
                << "\n";
      if (set_args.kind == "C") {
        auto bound = arith::measure_bound_C(parse_rational(set_args.M), parse_rational(set_args.tau));
        auto total = RealInterval(set.exact_measure()) + set.tail_measure_bound();
        std::cout << "measure + tail <= " << total.hi_string(8) << (total.certainly_lt(bound) ? " < " : " !< ")
                  << "2 zeta(1+tau)/M = " << bound.hi_string(8) << "\n";
      }
      emit_json(cfg, set_json, io::interval_set_json(set));
      emit(cfg, set_csv, io::interval_set_csv(set));
    } else if (*dom_cmd) {
      auto dom = domains::build_domain(dom_args.build());
      std::cout << dom.diamonds().size() << " diamonds, max Phi " << dom.profile().max_value() << "\n";
      if (!dom_curves.empty()) {
        auto c = domains::curves(dom, dom_samples);
        std::cout << "inner length " << c.inner_length << ", outer length " << c.outer_length << ", chord error <= "
                  << c.chord_error << "\n";
        emit(cfg, dom_curves, io::curves_csv(c));
      }
      emit_json(cfg, dom_diamonds, io::diamonds_json(dom));
      if (!dom_contains.empty()) {
        Complex q = io::parse_complex(dom_contains);
        std::cout << "q " << (dom.contains(q) ? "in" : "not in") << " K\n";
      }
      if (!dom_melnikov.empty()) {
        auto m = domains::melnikov_sum(dom, io::parse_complex(dom_melnikov), dom_lmax, dom_quad);
        std::cout << "Melnikov partial sum " << m.value << " +- " << m.error_estimate << " (" << m.note << ")\n";
      }
    } else if (*solve_cmd) {
      auto problem = lab::parse_problem(solve_problem);
      io::Json certs = io::Json::object();
      if (problem == lab::Problem::C) {
        const Complex q = io::parse_complex(solve_q), eps = io::parse_complex(solve_eps);
        const double im_alpha = std::abs(solvers::imag_rotation(q));
        solvers::CircleOptions opts;
        opts.R = solve_R;
        opts.Lambda = solve_Lambda ? *solve_Lambda : (im_alpha > 0.0 ? im_alpha / 2.0 : 0.5);
        opts.defect_grid = cfg.theta_samples;
        opts.modes = cfg.N_fourier;
        auto g = io::parse_fourier_g(solve_g, solve_R);
        solvers::CircleSolution sol;
        try {
          sol = solvers::solve_C(g, q, eps, opts);
        } catch (const std::exception& e) {
          bool precondition = dynamic_cast<const solvers::NonContraction*>(&e) != nullptr ||
                              dynamic_cast<const std::invalid_argument*>(&e) != nullptr;
          if (solve_certify || !precondition) throw;
          std::cout << "not certified (" << e.what() << "); running without the certificate\n";
          opts.certify = false;
          sol = solvers::solve_C(g, q, eps, opts);
        }
        std::cout << "iterations " << sol.iterations << ", defect " << sol.final_defect << ", r' "
                  << sol.constants.r_prime << (sol.certified ? ", certified" : ", not certified") << "\n";
        std::cout << "beta = " << sol.beta << "\n";
        emit_json(cfg, solve_out, io::circle_solution_json(sol));
      } else if (solve_exact) {
        QComplex q = io::parse_qcomplex(solve_q);
        auto g = io::parse_power_g_exact(solve_g, cfg.N_power);
        series::PowerSeries<QComplex> r;
        series::PowerSeries<QComplex> h;
        if (problem == lab::Problem::L) {
          auto sol = solvers::solve_L(g, q, cfg.N_power);
          r = solvers::residual_L(sol, g);
          h = sol.h;
        } else {
          auto sol = solvers::solve_S(g, q, cfg.N_power);
          r = solvers::residual_S(sol, g);
          h = sol.h;
        }
        bool zero = true;
        io::Json coeffs = io::Json::array();
        for (Index k = 0; k <= h.order(); ++k) {
          zero = zero && r[k].is_zero();
          coeffs.push_back(io::Json::array({to_string(h[k].re), to_string(h[k].im)}));
        }
        std::cout << "exact residual " << (zero ? "zero" : "NONZERO") << " through order " << h.order() << "\n";
        emit_json(cfg, solve_out,
                  {{"problem", lab::to_string(problem)}, {"q", io::Json::array({to_string(q.re), to_string(q.im)})},
                   {"eps", nullptr}, {"coefficients", coeffs}, {"defect", zero ? 0 : 1},
                   {"certificates", {{"exact", true}}}});
        if (!zero) return kNumerical;
      } else {
        Complex q = io::parse_complex(solve_q);
        auto g = io::parse_power_g(solve_g, cfg.N_power);
        series::CSeries h;
        double defect = 0.0;
        if (problem == lab::Problem::L) {
          auto sol = solvers::solve_L(g, q, cfg.N_power);
          defect = max_abs(solvers::residual_L(sol, g));
          h = sol.h;
        } else {
          auto sol = solvers::solve_S(g, q, cfg.N_power);
          defect = max_abs(solvers::residual_S(sol, g));
          h = sol.h;
        }
        certs["root_test_radius"] = solvers::root_test_radius(h);
        if (solve_M) certs["radius"] = lab::certified_radius(problem, *solve_M, cfg);
        std::cout << "max residual " << defect << ", root-test radius " << solvers::root_test_radius(h) << "\n";
        emit_json(cfg, solve_out, io::power_solution_json(lab::to_string(problem), q, h, defect, certs));
      }
    } else if (*verify_cmd) {
      const Rational gamma = parse_rational(verify_gamma), tau = parse_rational(verify_tau);
      bool ok = false, inconclusive = false;
      if (verify_what == "rank-measure") {
        auto rep = arith::rank_measure_check(gamma, tau, verify_k, verify_mmax);
        std::cout << "|I_k| = " << rep.interval_length << ", |DC cap I_k| >= " << rep.dc_lower_bound.lo()
                  << ", target (1 - 26 gamma)|I_k| = " << to_double(rep.target) << ", " << rep.flagged
                  << " flagged rationals, structural checks " << (rep.structural_ok ? "ok" : "FAILED") << "\n";
        if (!rep.detail.empty()) std::cout << rep.detail << "\n";
        ok = rep.pass;
        inconclusive = rep.inconclusive;
        if (inconclusive) std::cout << "suggested --mmax " << rep.suggested_m_max << "\n";
      } else if (verify_what == "rank-bruno") {
        auto rep = arith::rank_bruno_check(gamma, tau, parse_rational(verify_M), verify_k);
        std::cout << "k_bar " << rep.k_bar << ", " << rep.detail << "\n";
        ok = rep.pass;
      } else if (verify_what == "rank") {
        auto I = arith::golden_rank_interval(verify_k);
        auto F1 = contfrac::fibonacci(verify_k + 1), F2 = contfrac::fibonacci(verify_k + 2);
        ok = I.length() == make_rational(1, F1 * F2);
        std::cout << "|I_" << verify_k << "| = " << I.length() << ", 1/(F_{k+1} F_{k+2}) = 1/" << BigInt(F1 * F2).get_str()
                  << "\n";
      } else if (verify_what == "measure") {
        auto set = arith::complement_C(parse_rational(verify_M), tau, verify_mmax);
        auto total = RealInterval(set.exact_measure()) + set.tail_measure_bound();
        auto bound = arith::measure_bound_C(parse_rational(verify_M), tau);
        ok = total.certainly_lt(bound);
        inconclusive = !ok && !total.certainly_ge(bound);
        std::cout << "measure + tail <= " << total.hi_string(10) << ", bound " << bound.hi_string(10) << "\n";
      } else if (verify_what == "best-approx") {
        std::mt19937_64 rng(cfg.seed);
        auto rep = lab::verify_best_approximation(io::parse_source(verify_x), verify_k, 2000, 200, rng);
        std::cout << rep.checked << " candidates: " << rep.passed << " pass, " << rep.failed << " fail, "
                  << rep.undecidable << " undecidable; gap checks " << contfrac::to_string(rep.gaps.status) << "\n";
        ok = rep.pass();
        inconclusive = rep.failed == 0 && rep.undecidable > 0;
      } else {
        throw std::invalid_argument("unknown verification '" + verify_what + "'");
      }
      std::cout << (ok ? "PASS" : inconclusive ? "INCONCLUSIVE" : "FAIL") << "\n";
      if (!ok) return inconclusive ? kUndecided : kNumerical;
    } else if (*whit_cmd) {
      auto problem = lab::parse_problem(whit_problem);
      auto rep = lab::whitney_probe(problem, whit_M, whit_samples, whit_scales, io::parse_power_g(whit_g, cfg.N_power), cfg);
      for (const auto& a : rep.anchors)
        std::cout << "anchor " << a.q1 << (a.interior ? " interior" : " near circle") << " slope "
                  << (a.slope_fitted ? std::to_string(a.fitted_slope) : std::string("n/a"))
                  << (a.flagged ? " FLAGGED" : "") << "\n";
      std::cout << rep.flagged << " of " << rep.anchors.size() << " anchors flagged\n";
      emit_json(cfg, whit_out, io::whitney_json(rep));
    } else if (*lim_cmd) {
      auto problem = lab::parse_problem(lim_problem);
      auto rep = lab::nontangential_limit_experiment(problem, lim_x.build(problem), lim_c, lim_d, lim_steps,
                                                     io::parse_power_g(lim_g, cfg.N_power), cfg, !lim_outside);
      for (const auto& r : rep.rows) std::cout << "j=" << r.j << " t=" << r.t << " diff=" << r.difference << "\n";
      std::cout << "Cauchy trend: " << (rep.cauchy ? "yes" : "no") << " (x certified " << rep.provenance.verdict
                << " " << rep.provenance.set << ", " << rep.provenance.detail << ")\n";
      emit(cfg, lim_csv, io::limit_csv(rep));
      emit_json(cfg, lim_json, io::limit_json(rep));
      if (!rep.cauchy) return kUndecided;
    } else if (*pseudo_cmd) {
      auto problem = lab::parse_problem(pseudo_problem);
      auto rep = lab::pseudocontinuation_demo(problem, pseudo_x.build(problem), pseudo_lo, pseudo_hi,
                                              io::parse_power_g(pseudo_g, cfg.N_power), cfg);
      for (const auto& r : rep.rows) std::cout << "j=" << r.j << " gap=" << r.gap << "\n";
      std::cout << "monotone: " << (rep.monotone ? "yes" : "no") << ", final/initial " << rep.final_ratio << "\n";
      emit(cfg, pseudo_csv, io::pseudo_csv(rep));
      emit_json(cfg, pseudo_json, io::pseudo_json(rep));
    } else if (*sweep_cmd) {
      auto problem = lab::parse_problem(sweep_problem);
      auto g = io::parse_power_g(sweep_g, cfg.N_power);
      std::ostringstream csv;
      csv.precision(17);
      csv << "theta,re_q,im_q,norm,status\n";
      size_t resonant = 0;
      for (int i = 0; i < cfg.q_samples; ++i) {
        double theta = static_cast<double>(i) / cfg.q_samples;
        Complex q = std::polar(sweep_radius, 2 * std::numbers::pi * theta);
        csv << theta << "," << q.real() << "," << q.imag() << ",";
        try {
          auto h = lab::solve_power(problem, g, q, cfg.N_power);
          csv << series::sup_norm_disk(h, sweep_r, cfg.theta_samples).value << ",ok\n";
        } catch (const solvers::Resonance&) {
          ++resonant;
          csv << ",resonance\n";
        }
      }
      std::cout << cfg.q_samples << " multipliers, " << resonant << " resonant\n";
      emit(cfg, sweep_csv, csv.str());
    }
  } catch (const lab::Undecided& e) {
    std::cerr << "undecided: " << e.what() << "\n";
    return kUndecided;
  } catch (const lab::InsufficientSamples& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return kUndecided;
  } catch (const Undecidable& e) {
    std::cerr << "undecided: " << e.what() << "\n";
    return kUndecided;
  } catch (const lab::ExperimentError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kInvalid;
  } catch (const solvers::Resonance& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const solvers::NonContraction& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const solvers::AnnulusEscape& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const solvers::NoConvergence& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const domains::QTooClose& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumerical;
  }
  return kOk;
}
