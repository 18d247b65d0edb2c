#include "sdlab/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>

namespace sdlab::io {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) out.push_back(trim(item));
  return out;
}

/// Splits "kind:body"; throws when the prefix differs.
std::string body_of(const std::string& spec, const std::string& kind) {
  const std::string prefix = kind + ":";
  if (spec.rfind(prefix, 0) != 0) throw std::invalid_argument("expected '" + prefix + "...', got '" + spec + "'");
  return spec.substr(prefix.size());
}

long parse_long(const std::string& s) {
  size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not an integer: '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("not an integer: '" + s + "'");
  return v;
}

class ExpressionParser {
 public:
  explicit ExpressionParser(const std::string& text) : s_(text) {}

  Complex parse() {
    Complex v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + s_.substr(pos_) + "'");
    return v;
  }

 private:
  const std::string& s_;
  size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("complex expression '" + s_ + "': " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Complex expr() {
    Complex v = term();
    for (;;) {
      if (eat('+')) v += term();
      else if (eat('-')) v -= term();
      else return v;
    }
  }
  Complex term() {
    Complex v = unary();
    for (;;) {
      if (eat('*')) v *= unary();
      else if (eat('/')) v /= unary();
      else return v;
    }
  }
  Complex unary() {
    // 0 - v keeps a positive zero imaginary part, so sqrt(-4) stays on the principal branch
    if (eat('-')) return Complex(0.0) - unary();
    if (eat('+')) return unary();
    Complex base = primary();
    if (eat('^')) return std::pow(base, unary());
    return base;
  }
  Complex primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Complex v = expr();
      if (!eat(')')) fail("missing ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* start = s_.c_str() + pos_;
      char* end = nullptr;
      double v = std::strtod(start, &end);
      if (end == start) fail("bad number");
      pos_ += static_cast<size_t>(end - start);
      if (pos_ < s_.size() && s_[pos_] == 'i' &&
          (pos_ + 1 == s_.size() || !std::isalpha(static_cast<unsigned char>(s_[pos_ + 1])))) {
        ++pos_;
        return {0.0, v};
      }
      return v;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      if (name == "i") return {0.0, 1.0};
      if (name == "pi") return std::numbers::pi;
      if (name == "e") return std::numbers::e;
      if (!eat('(')) fail("unknown identifier '" + name + "'");
      Complex arg = expr();
      if (!eat(')')) fail("missing ')'");
      if (name == "exp") return std::exp(arg);
      if (name == "log") return std::log(arg);
      if (name == "sqrt") return std::sqrt(arg);
      if (name == "sin") return std::sin(arg);
      if (name == "cos") return std::cos(arg);
      fail("unknown function '" + name + "'");
    }
    fail(std::string("unexpected '") + c + "'");
  }
};

std::string rational_string(const Rational& q) { return to_string(q); }

}  // namespace

Complex parse_complex(const std::string& text) {
  Complex z = ExpressionParser(text).parse();
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::invalid_argument("complex expression '" + text + "' is not finite");
  return z;
}

QComplex parse_qcomplex(const std::string& text) {
  auto parts = split(text, ',');
  if (parts.empty() || parts.size() > 2) throw std::invalid_argument("exact complex must be 're' or 're,im'");
  QComplex z(parse_rational(parts[0]));
  if (parts.size() == 2) z.im = parse_rational(parts[1]);
  return z;
}

series::CFourier parse_fourier_g(const std::string& spec, double R) {
  std::vector<std::pair<Index, Complex>> modes;
  Index top = 0;
  for (const auto& item : split(body_of(spec, "modes"), ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    Index k = parse_long(trim(item.substr(0, eq)));
    Complex c = eq == std::string::npos ? Complex(1.0) : parse_complex(item.substr(eq + 1));
    if (k == 0) throw std::invalid_argument("g must have zero mean: mode 0 is not allowed");
    modes.emplace_back(k, c);
    top = std::max(top, std::abs(k));
  }
  if (modes.empty()) throw std::invalid_argument("g spec lists no modes");
  series::CFourier g(top, 2.0 * R);
  for (auto [k, c] : modes) g[k] += c;
  return g;
}

series::CSeries parse_power_g(const std::string& spec, Index N) {
  series::CSeries g(N);
  for (const auto& item : split(body_of(spec, "poly"), ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("poly terms are 'k=c', got '" + item + "'");
    Index k = parse_long(trim(item.substr(0, eq)));
    if (k < 2) throw std::invalid_argument("g must start at z^2");
    if (k <= N) g[k] += parse_complex(item.substr(eq + 1));
  }
  return g;
}

series::PowerSeries<QComplex> parse_power_g_exact(const std::string& spec, Index N) {
  series::PowerSeries<QComplex> g(N);
  // terms are separated by ';' so that the coefficient may be "re,im"
  for (const auto& item : split(body_of(spec, "poly"), ';')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("poly terms are 'k=c', got '" + item + "'");
    Index k = parse_long(trim(item.substr(0, eq)));
    if (k < 2) throw std::invalid_argument("g must start at z^2");
    if (k <= N) g[k] += parse_qcomplex(item.substr(eq + 1));
  }
  return g;
}

contfrac::CfSource parse_source(const std::string& spec) {
  if (spec == "golden") return contfrac::Surd::golden();
  if (spec == "golden-conjugate") return contfrac::Surd::golden_conjugate();
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("unknown number spec '" + spec + "'");
  const std::string kind = spec.substr(0, colon), body = spec.substr(colon + 1);
  if (kind == "sqrt") {
    contfrac::Surd s = contfrac::Surd::sqrt_of(parse_long(body));
    s.validate();
    return s;
  }
  if (kind == "surd") {
    auto parts = split(body, ',');
    if (parts.size() != 4) throw std::invalid_argument("surd spec is 'surd:p,q,d,r'");
    contfrac::Surd s{BigInt(parts[0]), BigInt(parts[1]), BigInt(parts[2]), BigInt(parts[3])};
    s.validate();
    return s;
  }
  if (kind == "rational") return parse_rational(body);
  if (kind == "cf" || kind == "periodic") {
    contfrac::QuotientSequence seq;
    auto blocks = split(body, ';');
    if (blocks.empty() || blocks.size() > 2) throw std::invalid_argument("quotient spec is 'a0,a1,...[;period]'");
    for (const auto& a : split(blocks[0], ',')) seq.prefix.emplace_back(a);
    if (blocks.size() == 2)
      for (const auto& a : split(blocks[1], ',')) seq.period.emplace_back(a);
    seq.validate();
    return seq;
  }
  throw std::invalid_argument("unknown number spec '" + spec + "'");
}

std::string describe(const contfrac::CfSource& source) {
  if (auto r = std::get_if<Rational>(&source)) return to_string(*r);
  if (auto s = std::get_if<contfrac::Surd>(&source)) return s->to_string();
  const auto& seq = std::get<contfrac::QuotientSequence>(source);
  std::string out = "[";
  for (size_t i = 0; i < seq.prefix.size(); ++i) out += (i ? "," : "") + seq.prefix[i].get_str();
  if (!seq.period.empty()) {
    out += "; (";
    for (size_t i = 0; i < seq.period.size(); ++i) out += (i ? "," : "") + seq.period[i].get_str();
    out += ")*";
  }
  return out + "]";
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    kv[trim(line.substr(0, eq))] = value;
  }
  return kv;
}

void apply_config(const std::map<std::string, std::string>& kv, lab::ExperimentConfig& cfg) {
  for (const auto& [key, value] : kv) {
    auto number = [&](auto convert) {
      try {
        size_t used = 0;
        auto v = convert(value, &used);
        if (used == value.size()) return v;
      } catch (const std::logic_error&) {
      }
      throw std::invalid_argument("bad value '" + value + "' for config key '" + key + "'");
    };
    auto as_long = [](const std::string& s, size_t* used) { return std::stol(s, used); };
    auto as_double = [](const std::string& s, size_t* used) { return std::stod(s, used); };
    auto as_ull = [](const std::string& s, size_t* used) { return std::stoull(s, used); };
    if (key == "precision") cfg.precision_bits = static_cast<int>(number(as_long));
    else if (key == "n_power") cfg.N_power = number(as_long);
    else if (key == "n_fourier") cfg.N_fourier = number(as_long);
    else if (key == "q_samples") cfg.q_samples = static_cast<int>(number(as_long));
    else if (key == "theta_samples") cfg.theta_samples = static_cast<int>(number(as_long));
    else if (key == "tol") cfg.tol = number(as_double);
    else if (key == "output_dir") cfg.output_dir = value;
    else if (key == "seed") cfg.seed = number(as_ull);
    else if (key == "cf_depth") cfg.cf_depth = number(as_ull);
    else if (key == "m_max") cfg.m_max = number(as_ull);
    else if (key == "g_radius") cfg.g_radius = number(as_double);
    else if (key == "siegel_delta") cfg.siegel_delta = number(as_double);
    else throw std::invalid_argument("unknown config key '" + key + "'");
  }
  cfg.validate();
}

int precision_from_env(int fallback) {
  const char* env = std::getenv("SDLAB_PRECISION");
  if (env == nullptr || *env == '\0') return fallback;
  long bits = parse_long(env);
  if (bits < 16 || bits > 1 << 20) throw std::invalid_argument("SDLAB_PRECISION out of range");
  return static_cast<int>(bits);
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json provenance_json(const lab::DomainProvenance& p) {
  return {{"set", p.set}, {"verdict", p.verdict}, {"m_max", p.m_max}, {"depth", p.depth},
          {"tail_model", p.tail_model}, {"detail", p.detail}};
}

Json interval_set_json(const arith::IntervalSet& set) {
  Json ivs = Json::array();
  for (const auto& iv : set.intervals())
    ivs.push_back({iv.lo.get_num().get_str(), iv.lo.get_den().get_str(), iv.hi.get_num().get_str(),
                   iv.hi.get_den().get_str()});
  return {{"intervals", ivs},
          {"exact_measure", rational_string(set.exact_measure())},
          {"tail_measure_bound", set.tail_measure_bound().hi_string()}};
}

std::string interval_set_csv(const arith::IntervalSet& set) {
  std::ostringstream os;
  os << "lo,hi,lo_approx,hi_approx\n";
  os.precision(17);
  for (const auto& iv : set.intervals())
    os << rational_string(iv.lo) << "," << rational_string(iv.hi) << "," << to_double(iv.lo) << ","
       << to_double(iv.hi) << "\n";
  return os.str();
}

std::string cf_table_csv(const contfrac::ContinuedFraction& cf) {
  std::ostringstream os;
  os << "k,a_k,n_k,m_k\n";
  for (size_t k = 0; k < cf.size(); ++k)
    os << k << "," << cf.a[k].get_str() << "," << cf.conv[k].n.get_str() << "," << cf.conv[k].m.get_str() << "\n";
  return os.str();
}

std::string curves_csv(const domains::NestedPairCurves& c) {
  std::ostringstream os;
  os.precision(17);
  os << "x,re_q,im_q,branch\n";
  for (const auto& v : c.inner) os << v.x << "," << v.q.real() << "," << v.q.imag() << ",inner\n";
  for (const auto& v : c.outer) os << v.x << "," << v.q.real() << "," << v.q.imag() << ",outer\n";
  return os.str();
}

Json diamonds_json(const domains::MultiplierDomain& d) {
  Json out = Json::array();
  for (const auto& dm : d.diamonds())
    out.push_back({{"lo", rational_string(dm.lo)},
                   {"hi", rational_string(dm.hi)},
                   {"center", rational_string(dm.center())},
                   {"apex", rational_string(dm.apex())}});
  return out;
}

Json power_solution_json(const std::string& problem, Complex q, const series::CSeries& h, double defect,
                         const Json& certificates) {
  Json coeffs = Json::array();
  for (Index k = 0; k <= h.order(); ++k) coeffs.push_back(complex_json(h[k]));
  return {{"problem", problem}, {"q", complex_json(q)}, {"eps", nullptr}, {"coefficients", coeffs},
          {"defect", defect}, {"certificates", certificates}};
}

Json circle_solution_json(const solvers::CircleSolution& sol) {
  Json v = Json::object(), u = Json::object();
  for (Index k = -sol.v.max_mode(); k <= sol.v.max_mode(); ++k) {
    v[std::to_string(k)] = complex_json(sol.v[k]);
    u[std::to_string(k)] = complex_json(sol.u[k]);
  }
  Json history = Json::array();
  for (const auto& r : sol.history)
    history.push_back({{"step", r.step}, {"ratio", r.ratio}, {"norm", r.norm}, {"shift", r.shift}, {"dropped", r.dropped}});
  const auto& k = sol.constants;
  return {{"problem", "C"},
          {"q", complex_json(sol.q)},
          {"eps", complex_json(sol.eps)},
          {"coefficients", {{"v", v}, {"u", u}, {"beta", complex_json(sol.beta)}}},
          {"defect", sol.final_defect},
          {"certificates",
           {{"certified", sol.certified},
            {"iterations", sol.iterations},
            {"conjugacy_defect", sol.conjugacy_defect},
            {"dropped_mass", sol.dropped_mass},
            {"R", k.R},
            {"Lambda", k.Lambda},
            {"E", k.E},
            {"C", k.C},
            {"C_coefficient", k.C_coefficient},
            {"r_prime", k.r_prime},
            {"ball", k.r_prime * k.C}}},
          {"history", history}};
}

Json whitney_json(const lab::WhitneyReport& rep) {
  Json anchors = Json::array();
  for (const auto& a : rep.anchors) {
    Json pairs = Json::array();
    for (const auto& p : a.pairs)
      pairs.push_back({{"q2", complex_json(p.q2)}, {"distance", p.distance}, {"defect_ratio", p.defect_ratio}});
    Json slope = a.slope_fitted ? Json(a.fitted_slope) : Json(nullptr);
    anchors.push_back({{"q1", complex_json(a.q1)}, {"interior", a.interior}, {"slope", slope},
                       {"flagged", a.flagged}, {"pairs", pairs}});
  }
  return {{"problem", lab::to_string(rep.problem)}, {"M", rep.M}, {"norm_radius", rep.norm_radius},
          {"flagged", rep.flagged}, {"provenance", provenance_json(rep.provenance)}, {"anchors", anchors}};
}

std::string limit_csv(const lab::LimitReport& rep) {
  std::ostringstream os;
  os.precision(17);
  os << "j,t,re_q,im_q,difference\n";
  for (const auto& r : rep.rows)
    os << r.j << "," << r.t << "," << r.q.real() << "," << r.q.imag() << "," << r.difference << "\n";
  return os.str();
}

Json limit_json(const lab::LimitReport& rep) {
  Json rows = Json::array();
  for (const auto& r : rep.rows) rows.push_back({{"j", r.j}, {"t", r.t}, {"q", complex_json(r.q)}, {"difference", r.difference}});
  return {{"problem", lab::to_string(rep.problem)}, {"x", rep.x}, {"r_cmp", rep.r_cmp}, {"cauchy", rep.cauchy},
          {"provenance", provenance_json(rep.provenance)}, {"rows", rows}};
}

std::string pseudo_csv(const lab::PseudoReport& rep) {
  std::ostringstream os;
  os.precision(17);
  os << "j,re_q_inner,im_q_inner,re_q_outer,im_q_outer,gap\n";
  for (const auto& r : rep.rows)
    os << r.j << "," << r.q_inner.real() << "," << r.q_inner.imag() << "," << r.q_outer.real() << ","
       << r.q_outer.imag() << "," << r.gap << "\n";
  return os.str();
}

Json pseudo_json(const lab::PseudoReport& rep) {
  Json rows = Json::array();
  for (const auto& r : rep.rows)
    rows.push_back({{"j", r.j}, {"q_inner", complex_json(r.q_inner)}, {"q_outer", complex_json(r.q_outer)}, {"gap", r.gap}});
  return {{"problem", lab::to_string(rep.problem)}, {"x", rep.x}, {"r_cmp", rep.r_cmp}, {"monotone", rep.monotone},
          {"final_ratio", rep.final_ratio}, {"provenance", provenance_json(rep.provenance)}, {"rows", rows}};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace sdlab::io
