#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "sdlab/arith_sets.hpp"
#include "sdlab/contfrac.hpp"
#include "sdlab/domains.hpp"
#include "sdlab/lab.hpp"
#include "sdlab/solvers.hpp"

namespace sdlab::io {

using Json = nlohmann::ordered_json;
using series::Index;

// ---------------------------------------------------------------------------
// Parsers. All throw std::invalid_argument on malformed input.

/// Complex expression with + - * / ^, parentheses, i, pi, e, exp, log, sqrt, sin, cos and
/// imaginary literals such as "0.3i", e.g. "exp(2*pi*i*(0.5+0.3i))".
Complex parse_complex(const std::string& text);
/// Exact complex "re" or "re,im" with rational parts.
QComplex parse_qcomplex(const std::string& text);

/// "modes:1,-1" (unit coefficients) or "modes:1=0.5,-1=0.5"; width of the strip is 2R.
series::CFourier parse_fourier_g(const std::string& spec, double R);
/// "poly:2=1,3=0.5i" for g = z^2 + 0.5i z^3, truncated at order N.
series::CSeries parse_power_g(const std::string& spec, Index N);
/// Rational coefficients, terms separated by semicolons: "poly:2=1/3;3=2,1" gives z^3 the coefficient 2 + i.
series::PowerSeries<QComplex> parse_power_g_exact(const std::string& spec, Index N);

/// "sqrt:2", "golden", "golden-conjugate", "surd:p,q,d,r", "rational:7/5", "cf:1,2,2" or
/// "periodic:0;1,2" (prefix; repeating block).
contfrac::CfSource parse_source(const std::string& spec);
std::string describe(const contfrac::CfSource& source);

/// Flat "key = value" lines; '#' starts a comment.
std::map<std::string, std::string> read_config(const std::string& path);
/// Applies known keys; unknown keys throw.
void apply_config(const std::map<std::string, std::string>& kv, lab::ExperimentConfig& cfg);
/// Precision from SDLAB_PRECISION when set, otherwise the fallback.
int precision_from_env(int fallback);

// ---------------------------------------------------------------------------
// Exporters. Floating-point values are written with round-trip precision.

Json complex_json(Complex z);
Json provenance_json(const lab::DomainProvenance& p);

/// {"intervals": [[num_lo, den_lo, num_hi, den_hi], ...], "exact_measure": "p/q", "tail_measure_bound": "..."}
Json interval_set_json(const arith::IntervalSet& set);
std::string interval_set_csv(const arith::IntervalSet& set);
std::string cf_table_csv(const contfrac::ContinuedFraction& cf);

/// Columns x, re_q, im_q, branch with branch "inner" or "outer".
std::string curves_csv(const domains::NestedPairCurves& c);
Json diamonds_json(const domains::MultiplierDomain& d);

Json power_solution_json(const std::string& problem, Complex q, const series::CSeries& h, double defect,
                         const Json& certificates);
Json circle_solution_json(const solvers::CircleSolution& sol);

Json whitney_json(const lab::WhitneyReport& rep);
std::string limit_csv(const lab::LimitReport& rep);
Json limit_json(const lab::LimitReport& rep);
std::string pseudo_csv(const lab::PseudoReport& rep);
Json pseudo_json(const lab::PseudoReport& rep);

/// Writes text to path, throwing std::runtime_error when the file cannot be written.
void write_file(const std::string& path, const std::string& text);

}  // namespace sdlab::io
