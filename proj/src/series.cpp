#include "sdlab/series.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace sdlab::series {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kBoundarySlack = 1e-12;

Complex eval_unchecked(const CFourier& v, Complex theta) {
  const Index N = v.max_mode();
  const Complex w = std::exp(Complex(0.0, kTwoPi) * theta);
  const Complex winv = 1.0 / w;
  Complex pos = 0.0;
  for (Index k = N; k >= 1; --k) pos = (pos + v[k]) * w;
  Complex neg = 0.0;
  for (Index k = N; k >= 1; --k) neg = (neg + v[-k]) * winv;
  return v[0] + pos + neg;
}

}  // namespace

Complex fs_eval(const CFourier& v, Complex theta) {
  if (v.width() > 0.0 && std::abs(theta.imag()) > v.width() / 2.0 + kBoundarySlack)
    throw OutOfAnnulus("fs_eval: |Im theta| exceeds half the declared width");
  return eval_unchecked(v, theta);
}

EvalWithError fs_eval_with_error(const CFourier& v, Complex theta) {
  EvalWithError out{fs_eval(v, theta), 0.0};
  if (!v.decay_bound() || v.width() <= 0.0) return out;
  double rate = std::numbers::pi * v.width() - kTwoPi * std::abs(theta.imag());
  if (rate <= 0.0) {
    out.tail = std::numeric_limits<double>::infinity();
    return out;
  }
  double N = static_cast<double>(v.max_mode());
  out.tail = 2.0 * *v.decay_bound() * std::exp(-rate * (N + 1.0)) / (1.0 - std::exp(-rate));
  return out;
}

CFourier fs_coeffs_from_values(const std::vector<Complex>& samples, Index N) {
  const Index G = static_cast<Index>(samples.size());
  if (G < 2 * N + 1) throw std::invalid_argument("fs_coeffs_from_samples: grid must be at least 2N+1");
  CFourier v(N);
  for (Index k = -N; k <= N; ++k) {
    Complex acc = 0.0;
    for (Index j = 0; j < G; ++j) {
      // reduce k*j mod G before scaling to keep the phase argument small
      Index phase = ((k * j) % G + G) % G;
      acc += samples[static_cast<size_t>(j)] * std::polar(1.0, -kTwoPi * static_cast<double>(phase) / G);
    }
    v[k] = acc / static_cast<double>(G);
  }
  return v;
}

CFourier fs_coeffs_from_samples(const std::function<Complex(double)>& f, Index N, Index grid,
                                std::optional<double> width, std::optional<double> bound) {
  if (grid < 2 * N + 1) throw std::invalid_argument("fs_coeffs_from_samples: grid must be at least 2N+1");
  std::vector<Complex> samples(static_cast<size_t>(grid));
  for (Index j = 0; j < grid; ++j) samples[static_cast<size_t>(j)] = f(static_cast<double>(j) / grid);
  CFourier v = fs_coeffs_from_values(samples, N);
  if (width && *width > 0.0) {
    v.set_width(*width);
    if (bound) {
      v.set_decay_bound(*bound);
      // sum over l != 0 of B e^{-pi |k + l G| R}, worst case |k| = N
      double R = *width;
      double G = static_cast<double>(grid);
      double alias = 2.0 * *bound * std::exp(-std::numbers::pi * (G - static_cast<double>(N)) * R) /
                     (1.0 - std::exp(-std::numbers::pi * G * R));
      v.set_aliasing_bound(alias);
    }
  }
  return v;
}

double coefficient_norm_bound(const CFourier& v, double rho) {
  double acc = 0.0;
  for (Index k = -v.max_mode(); k <= v.max_mode(); ++k)
    acc += std::abs(v[k]) * std::exp(kTwoPi * std::abs(static_cast<double>(k)) * rho);
  return acc;
}

namespace {

double strip_max(const CFourier& v, double rho, Index grid) {
  double best = 0.0;
  for (Index j = 0; j < grid; ++j) {
    double x = static_cast<double>(j) / grid;
    best = std::max(best, std::abs(eval_unchecked(v, Complex(x, rho))));
    if (rho != 0.0) best = std::max(best, std::abs(eval_unchecked(v, Complex(x, -rho))));
  }
  return best;
}

double disk_max(const CSeries& p, double r, Index grid) {
  double best = 0.0;
  for (Index j = 0; j < grid; ++j) {
    Complex z = std::polar(r, kTwoPi * static_cast<double>(j) / grid);
    best = std::max(best, std::abs(ps_eval(p, z)));
  }
  return best;
}

}  // namespace

NormEstimate sup_norm_strip(const CFourier& v, double rho, Index grid) {
  NormEstimate n;
  n.coarse = strip_max(v, rho, grid);
  n.value = std::max(n.coarse, strip_max(v, rho, 2 * grid));
  n.refinement = n.value - n.coarse;
  return n;
}

NormEstimate sup_norm_disk(const CSeries& p, double r, Index grid) {
  NormEstimate n;
  n.coarse = disk_max(p, r, grid);
  n.value = std::max(n.coarse, disk_max(p, r, 2 * grid));
  n.refinement = n.value - n.coarse;
  return n;
}

double half_projection_bound(double R) { return 2.0 + 1.0 / std::expm1(kTwoPi * R); }

}  // namespace sdlab::series
