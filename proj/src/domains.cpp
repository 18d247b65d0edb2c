#include "sdlab/domains.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

namespace sdlab::domains {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex E(Complex z) { return std::exp(Complex(0.0, kTwoPi) * z); }

/// Gauss-Legendre nodes and weights on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  std::vector<double> x(static_cast<size_t>(n)), w(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      double step = p1 / dp;
      t -= step;
      if (std::abs(step) < 1e-16) break;
    }
    x[static_cast<size_t>(i)] = t;
    w[static_cast<size_t>(i)] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
  return {x, w};
}

struct EdgeIntegral {
  double value = 0.0;
  double min_distance = std::numeric_limits<double>::infinity();
};

/// Integral over the segment a -> b of 2 pi |E(z)| / |E(z) - q|^3 |dz|.
EdgeIntegral edge_integral(Complex a, Complex b, Complex q, const std::vector<double>& nodes,
                           const std::vector<double>& weights) {
  EdgeIntegral out;
  const double half = std::abs(b - a) / 2.0;
  for (size_t i = 0; i < nodes.size(); ++i) {
    Complex z = a + (b - a) * ((nodes[i] + 1.0) / 2.0);
    Complex zeta = E(z);
    double dist = std::abs(zeta - q);
    out.min_distance = std::min(out.min_distance, dist);
    out.value += weights[i] * half * kTwoPi * std::abs(zeta) / (dist * dist * dist);
  }
  return out;
}

/// Lower bound on the distance from q to the image of the segment a -> b: sampled distances
/// less half the longest image step.
double edge_distance_lower_bound(Complex a, Complex b, Complex q) {
  constexpr int kSamples = 512;
  double best = std::numeric_limits<double>::infinity(), step = 0.0;
  Complex prev = E(a);
  best = std::abs(prev - q);
  for (int j = 1; j <= kSamples; ++j) {
    Complex cur = E(a + (b - a) * (static_cast<double>(j) / kSamples));
    best = std::min(best, std::abs(cur - q));
    step = std::max(step, std::abs(cur - prev));
    prev = cur;
  }
  return std::max(0.0, best - step / 2.0);
}

std::vector<std::pair<Complex, Complex>> diamond_edges(const Diamond& d) {
  double lo = to_double(d.lo), hi = to_double(d.hi), mid = to_double(d.center()), h = to_double(d.apex());
  Complex L(lo, 0.0), T(mid, h), Rr(hi, 0.0), B(mid, -h);
  return {{L, T}, {T, Rr}, {Rr, B}, {B, L}};
}

}  // namespace

double canonical(double x) { return x - std::floor(x); }

Rational canonical(const Rational& x) { return x - Rational(sdlab::floor(x)); }

Complex rotation_coordinate(Complex q) {
  double x = canonical(std::arg(q) / kTwoPi);
  if (x >= 1.0) x = 0.0;
  double y = -std::log(std::abs(q)) / kTwoPi;
  return {x, y};
}

Rational DistanceProfile::operator()(const Rational& x) const {
  Rational c = canonical(x);
  long i = complement_.component_of(c);
  if (i < 0) return Rational(0);
  const auto& iv = complement_.intervals()[static_cast<size_t>(i)];
  return std::min(Rational(c - iv.lo), Rational(iv.hi - c));
}

double DistanceProfile::operator()(double x) const {
  double c = canonical(x);
  long i = complement_.component_of(c);
  if (i < 0) return 0.0;
  const auto& iv = complement_.intervals()[static_cast<size_t>(i)];
  return std::min(c - to_double(iv.lo), to_double(iv.hi) - c);
}

Rational DistanceProfile::max_value() const {
  Rational best(0);
  for (const auto& iv : complement_.intervals()) best = std::max(best, Rational(iv.length() / 2));
  return best;
}

bool Diamond::contains(const Rational& x, const Rational& y) const {
  if (!(lo < x && x < hi)) return false;
  return abs(y) < std::min(Rational(x - lo), Rational(hi - x));
}

bool Diamond::contains(double x, double y) const {
  double l = to_double(lo), h = to_double(hi);
  if (!(l < x && x < h)) return false;
  return std::abs(y) < std::min(x - l, h - x);
}

MultiplierDomain::MultiplierDomain(DistanceProfile profile) : profile_(std::move(profile)) {
  for (const auto& iv : profile_.complement().intervals()) diamonds_.push_back({iv.lo, iv.hi});
}

bool MultiplierDomain::contains(Complex q) const {
  if (q == Complex(0.0)) return true;
  if (!std::isfinite(q.real()) || !std::isfinite(q.imag())) return true;
  Complex z = rotation_coordinate(q);
  return std::abs(z.imag()) >= profile_(z.real());
}

bool MultiplierDomain::contains_rotation(const Rational& x, const Rational& y) const { return abs(y) >= profile_(x); }

long MultiplierDomain::diamond_of(double x, double y) const {
  double c = canonical(x);
  for (size_t i = 0; i < diamonds_.size(); ++i)
    if (diamonds_[i].contains(c, y)) return static_cast<long>(i);
  return -1;
}

MultiplierDomain build_domain(const arith::IntervalSet& complement) {
  return MultiplierDomain(DistanceProfile(complement));
}

NestedPairCurves curves(const MultiplierDomain& domain, int samples_per_interval, int arc_samples) {
  if (samples_per_interval < 2) throw std::invalid_argument("curves: need at least 2 samples per interval");
  NestedPairCurves out;
  out.samples_per_interval = samples_per_interval;
  // even count so the apex is a vertex
  const int s = samples_per_interval + (samples_per_interval % 2);
  const double arc_step = 1.0 / std::max(arc_samples, 1);

  std::vector<double> xs;
  double cursor = 0.0;
  auto fill_arc = [&](double a, double b) {
    int n = std::max(1, static_cast<int>(std::ceil((b - a) / arc_step)));
    for (int j = 0; j < n; ++j) xs.push_back(a + (b - a) * j / n);
  };
  double max_h = 0.0;
  for (const auto& iv : domain.profile().complement().intervals()) {
    double lo = to_double(iv.lo), hi = to_double(iv.hi);
    if (lo > cursor) fill_arc(cursor, lo);
    for (int j = 0; j < s; ++j) xs.push_back(lo + (hi - lo) * j / s);
    max_h = std::max(max_h, (hi - lo) / s);
    cursor = hi;
  }
  if (cursor < 1.0) fill_arc(cursor, 1.0);
  max_h = std::max(max_h, arc_step);
  xs.push_back(1.0);

  double phi_max = to_double(domain.profile().max_value());
  for (double x : xs) {
    double phi = x >= 1.0 ? domain.profile()(0.0) : domain.profile()(x);
    Complex turn = std::polar(1.0, kTwoPi * x);
    out.inner.push_back({x, std::exp(-kTwoPi * phi) * turn});
    out.outer.push_back({x, std::exp(kTwoPi * phi) * turn});
  }
  for (size_t i = 1; i < out.inner.size(); ++i) {
    out.inner_length += std::abs(out.inner[i].q - out.inner[i - 1].q);
    out.outer_length += std::abs(out.outer[i].q - out.outer[i - 1].q);
  }
  // on each linear piece the curve is c e^{2 pi (i -+ 1) x}, |c''| = 8 pi^2 |c|
  out.chord_error = std::numbers::pi * std::numbers::pi * std::exp(kTwoPi * phi_max) * max_h * max_h;
  return out;
}

MelnikovResult melnikov_sum(const MultiplierDomain& domain, Complex q, size_t l_max, int quad_points,
                            double min_margin) {
  if (quad_points < 1) throw std::invalid_argument("melnikov_sum: quad_points must be positive");
  MelnikovResult res;
  std::vector<size_t> order(domain.diamonds().size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return domain.diamonds()[a].apex() > domain.diamonds()[b].apex();
  });
  const size_t used = std::min(l_max, order.size());
  res.components = used;
  res.omitted = order.size() - used;
  res.margin = std::numeric_limits<double>::infinity();

  auto [xc, wc] = gauss_legendre(quad_points);
  auto [xf, wf] = gauss_legendre(2 * quad_points);
  double coarse = 0.0, fine = 0.0;
  for (size_t idx = 0; idx < used; ++idx) {
    for (const auto& [a, b] : diamond_edges(domain.diamonds()[order[idx]])) {
      auto c = edge_integral(a, b, q, xc, wc);
      auto f = edge_integral(a, b, q, xf, wf);
      coarse += c.value;
      fine += f.value;
      res.margin = std::min({res.margin, c.min_distance, f.min_distance, edge_distance_lower_bound(a, b, q)});
    }
  }
  if (used > 0 && res.margin < min_margin)
    throw QTooClose("melnikov_sum: q is within " + std::to_string(res.margin) + " of a diamond boundary");
  res.value = fine;
  res.error_estimate = std::abs(fine - coarse);

  // omitted diamonds: perimeter of the image times the worst inverse cube distance
  if (res.omitted > 0) {
    double r = std::abs(q);
    double total = 0.0;
    for (size_t idx = used; idx < order.size(); ++idx) {
      const Diamond& d = domain.diamonds()[order[idx]];
      double h = to_double(d.apex());
      double inner = std::exp(-kTwoPi * h), outer = std::exp(kTwoPi * h);
      double dist = r < inner ? inner - r : (r > outer ? r - outer : 0.0);
      if (dist == 0.0) {
        total = std::numeric_limits<double>::infinity();
        break;
      }
      double perimeter = kTwoPi * outer * 4.0 * std::sqrt(2.0) * h;
      total += perimeter / (dist * dist * dist);
    }
    res.omitted_bound = total;
  }
  res.note = "lower partial sum over " + std::to_string(used) + " of " + std::to_string(order.size()) +
             " diamonds; the omitted ones contribute at most " + std::to_string(res.omitted_bound) +
             "; the complement of K has no component through 0 or infinity in this construction";
  return res;
}

bool NontangentialCone::operator()(Complex q) const {
  double r = std::abs(q);
  double theta = std::arg(q) / kTwoPi;
  double delta = theta - x;
  delta -= std::round(delta);
  double radial = std::abs(r - 1.0);
  return c * std::abs(delta) <= radial && radial <= d;
}

Complex NontangentialCone::radial(double t, bool inside) const {
  return std::polar(inside ? 1.0 - t : 1.0 + t, kTwoPi * x);
}

NontangentialCone nontangential_cone(double x, double c, double d) {
  if (!(c > 0.0)) throw std::invalid_argument("nontangential_cone: c must be positive");
  if (!(d > 0.0 && d < 1.0)) throw std::invalid_argument("nontangential_cone: d must lie in (0, 1)");
  return {x, c, d};
}

}  // namespace sdlab::domains
