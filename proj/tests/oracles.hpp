#ifndef BOHM_TESTS_ORACLES_HPP
#define BOHM_TESTS_ORACLES_HPP

// Independent numerical references. None of these reuse the closed forms
// they are compared against.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include "bohm/vec.hpp"
#include "bohm/wavecore.hpp"

namespace oracle {

using cd = std::complex<double>;

/// One Cartesian component of the pair wave by direct 2D quadrature of the
/// plane-wave superposition over (p1, p2):
///   integral F(p1, p2) exp(i p1 x1 + i p2 x2 - i (p1^2/2m1 + p2^2/2m2) t)
/// with F = exp(-(p1 + p2)^2 / sigma - alpha q^2), q = (m2 p1 - m1 p2)/M.
inline cd pair_component(const bohm::DecayParams &p, double x1, double x2, double t, int n = 801,
                         double extent = 0.0) {
  const double m1 = p.m1(), m2 = p.m2(), M = p.total_mass();
  if (extent == 0.0) extent = 9.0 * std::max(std::sqrt(p.sigma()), 1.0 / std::sqrt(p.alpha()));
  const double h = 2.0 * extent / (n - 1);
  cd sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double p1 = -extent + i * h;
    for (int j = 0; j < n; ++j) {
      const double p2 = -extent + j * h;
      const double P = p1 + p2, q = (m2 * p1 - m1 * p2) / M;
      const double re = -P * P / p.sigma() - p.alpha() * q * q;
      if (re < -60.0) continue;
      const double ph = p1 * x1 + p2 * x2 - (p1 * p1 / (2 * m1) + p2 * p2 / (2 * m2)) * t;
      sum += std::exp(cd(re, ph));
    }
  }
  return sum * h * h;
}

inline cd pair_wave(const bohm::DecayParams &p, const bohm::PairState &s, int n = 801) {
  cd out = 1.0;
  for (int k = 0; k < 3; ++k) out *= pair_component(p, s.r1[k], s.r2[k], s.t, n);
  return out;
}

/// Guidance velocities by central differences of an amplitude function,
/// v = Im(d psi / psi) / m, step h.
inline bohm::PairVelocity fd_velocity(const std::function<cd(const bohm::PairState &)> &psi,
                                      const bohm::DecayParams &p, const bohm::PairState &s, double h = 1e-5) {
  const cd c = psi(s);
  bohm::PairVelocity v;
  for (int k = 0; k < 3; ++k) {
    bohm::PairState a = s, b = s;
    a.r1[k] += h;
    b.r1[k] -= h;
    v.v1[k] = ((psi(a) - psi(b)) / (2 * h) / c).imag() / p.m1();
    a = s;
    b = s;
    a.r2[k] += h;
    b.r2[k] -= h;
    v.v2[k] = ((psi(a) - psi(b)) / (2 * h) / c).imag() / p.m2();
  }
  return v;
}

/// Limit wave straight from its defining formula (no shared helpers).
inline cd limit_wave(const bohm::DecayParams &p, const bohm::PairState &s) {
  const cd c(p.alpha(), s.t / (2.0 * p.m1() * p.m2() / (p.m1() + p.m2())));
  const bohm::Vec3 d = s.r1 - s.r2;
  const double d2 = d.x * d.x + d.y * d.y + d.z * d.z;
  return std::pow(std::numbers::pi / c, 1.5) * std::exp(-d2 / (4.0 * c));
}

/// Ray-transfer matrices.
struct Abcd {
  double A, B, C, D;
  friend Abcd operator*(const Abcd &x, const Abcd &y) {
    return {x.A * y.A + x.B * y.C, x.A * y.B + x.B * y.D, x.C * y.A + x.D * y.C, x.C * y.B + x.D * y.D};
  }
};
inline Abcd free_space(double d) { return {1.0, d, 0.0, 1.0}; }
inline Abcd thin_lens(double f) { return {1.0, 0.0, -1.0 / f, 1.0}; }

/// J_n by the power series summed in long double.
inline double bessel_series(int n, double x) {
  const long double h = 0.5L * x;
  long double term = 1.0L;
  for (int k = 1; k <= n; ++k) term *= h / k;
  long double sum = term;
  for (int k = 1; k < 400; ++k) {
    term *= -h * h / (static_cast<long double>(k) * (k + n));
    sum += term;
    if (std::fabs(static_cast<double>(term)) < 1e-30) break;
  }
  return static_cast<double>(sum);
}

/// Trapezoid moment ratio integral x^2 w(x) / integral w(x) on [-L, L].
inline double second_moment(const std::function<double(double)> &w, double L, int n = 20001) {
  const double h = 2.0 * L / (n - 1);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = -L + i * h;
    const double f = w(x) * ((i == 0 || i == n - 1) ? 0.5 : 1.0);
    num += x * x * f;
    den += f;
  }
  return num / den;
}

/// Two-sided Kolmogorov-Smirnov statistic of samples against a normal CDF.
inline double ks_normal(std::vector<double> xs, double mean, double var) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double F = 0.5 * std::erfc(-(xs[i] - mean) / std::sqrt(2.0 * var));
    d = std::max({d, std::abs(F - i / n), std::abs((i + 1) / n - F)});
  }
  return d;
}

} // namespace oracle

#endif // BOHM_TESTS_ORACLES_HPP
