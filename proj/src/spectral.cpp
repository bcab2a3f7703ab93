#include "epcontact/spectral.hpp"

#include <cmath>
#include <numbers>

#include "epcontact/errors.hpp"

namespace epcontact {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_to_pi(double d) {
  d = std::remainder(d, kTwoPi);
  return d;
}
}  // namespace

std::vector<double> periodic_diff_weights(int n) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "periodic grid needs n >= 2");
  std::vector<double> w(static_cast<std::size_t>(n), 0.0);
  const bool even = (n % 2 == 0);
  for (int m = 1; m <= (n - 1) / 2; ++m) {
    const double arg = std::numbers::pi * m / n;
    double val = even ? 0.5 / std::tan(arg) : 0.5 / std::sin(arg);
    if (m % 2 == 0) val = -val;
    // (Df)_j = sum_m w[m] f_{j-m}; the forward neighbor carries the
    // positive sign.  Building the pair from one trig evaluation keeps the
    // table exactly antisymmetric, so constants differentiate to exact zero.
    w[static_cast<std::size_t>(n - m)] = val;
    w[static_cast<std::size_t>(m)] = -val;
  }
  // For even n the antipodal weight vanishes identically.
  if (even) w[static_cast<std::size_t>(n / 2)] = 0.0;
  return w;
}

Vec periodic_derivative(const Vec& samples) {
  const int n = static_cast<int>(samples.size());
  const auto w = periodic_diff_weights(n);
  Vec out(n);
  for (int j = 0; j < n; ++j) {
    ExactSum acc;
    for (int m = 1; m < n; ++m) {
      int k = j - m;
      if (k < 0) k += n;
      acc.add(w[static_cast<std::size_t>(m)] * samples[k]);
    }
    out[j] = acc.value();
  }
  return out;
}

int angular_winding(const Vec& samples) {
  const int n = static_cast<int>(samples.size());
  double total = 0.0;
  for (int j = 0; j < n; ++j) {
    total += wrap_to_pi(samples[(j + 1) % n] - samples[j]);
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

namespace {
// Unwrapped samples minus the winding ramp: a genuinely periodic sequence.
Vec deramped(const Vec& samples, int winding) {
  const int n = static_cast<int>(samples.size());
  Vec u(n);
  u[0] = samples[0];
  for (int j = 1; j < n; ++j) {
    u[j] = u[j - 1] + wrap_to_pi(samples[j] - samples[j - 1]);
  }
  for (int j = 0; j < n; ++j) {
    u[j] -= winding * (kTwoPi * j / n);
  }
  return u;
}
}  // namespace

Vec periodic_derivative_angular(const Vec& samples) {
  const int wind = angular_winding(samples);
  Vec d = periodic_derivative(deramped(samples, wind));
  d.array() += static_cast<double>(wind);
  return d;
}

namespace {
// Cardinal function of the uniform periodic grid, tau(0) = 1.
double trig_cardinal(double s, int n) {
  const double r = std::remainder(s, kTwoPi);
  if (std::fabs(r) < 1e-14) return 1.0;
  if (n % 2 == 0) {
    return std::sin(0.5 * n * r) / (n * std::tan(0.5 * r));
  }
  return std::sin(0.5 * n * r) / (n * std::sin(0.5 * r));
}
}  // namespace

Vec trig_interpolate(const Vec& samples, const Vec& eval_at) {
  const int n = static_cast<int>(samples.size());
  Vec out(eval_at.size());
  for (int i = 0; i < eval_at.size(); ++i) {
    ExactSum acc;
    for (int j = 0; j < n; ++j) {
      const double sj = kTwoPi * j / n;
      acc.add(samples[j] * trig_cardinal(eval_at[i] - sj, n));
    }
    out[i] = acc.value();
  }
  return out;
}

Vec trig_interpolate_angular(const Vec& samples, const Vec& eval_at) {
  const int wind = angular_winding(samples);
  Vec out = trig_interpolate(deramped(samples, wind), eval_at);
  for (int i = 0; i < out.size(); ++i) {
    out[i] += wind * eval_at[i];
  }
  return out;
}

}  // namespace epcontact
