#ifndef BOHM_BESSEL_HPP
#define BOHM_BESSEL_HPP

// Ordinary Bessel functions of the first kind, integer order.
// |x| < 8: power series. 8 <= |x| < 25: Miller backward recurrence normalized
// with J0 + 2 sum J2k = 1. Beyond: Hankel asymptotic expansion.

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <vector>

namespace bohm::bessel {

namespace detail {

inline double series(int n, double x) {
  const double h = 0.5 * x;
  double term = 1.0;
  for (int k = 1; k <= n; ++k) term *= h / k;
  double sum = term;
  const double h2 = h * h;
  for (int k = 1; k < 200; ++k) {
    term *= -h2 / (static_cast<double>(k) * static_cast<double>(k + n));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

/// J_0..J_nmax at x > 0 by backward recurrence.
inline std::vector<double> miller(int nmax, double x) {
  const int start = 2 * ((std::max(nmax, static_cast<int>(x)) + 30 + static_cast<int>(std::sqrt(40.0 * x))) / 2);
  std::vector<double> j(static_cast<std::size_t>(nmax) + 1, 0.0);
  double next = 0.0, cur = 1e-300, norm = 0.0;
  for (int k = start; k >= 1; --k) {
    const double prev = 2.0 * k / x * cur - next; // J_{k-1}
    next = cur;
    cur = prev;
    if (k - 1 <= nmax) j[static_cast<std::size_t>(k - 1)] = cur;
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * cur;
    if (std::abs(cur) > 1e250) { // rescale
      next *= 1e-250;
      cur *= 1e-250;
      norm *= 1e-250;
      for (auto &v : j) v *= 1e-250;
    }
  }
  norm += cur;
  for (auto &v : j) v /= norm;
  return j;
}

inline double hankel(int n, double x) {
  const double mu = 4.0 * n * n;
  double p = 1.0, q = 0.0, term = 1.0;
  const double ex = 8.0 * x;
  for (int k = 1; k < 60; ++k) {
    const double f = (mu - (2.0 * k - 1) * (2.0 * k - 1)) / (k * ex);
    const double nt = term * f;
    if (std::abs(nt) > std::abs(term) && k > 2) break;
    term = nt;
    if (k % 2 == 1) q += (k % 4 == 1 ? 1.0 : -1.0) * term;
    else p += (k % 4 == 2 ? -1.0 : 1.0) * term;
    if (std::abs(term) < 1e-17) break;
  }
  const double chi = x - (0.5 * n + 0.25) * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

} // namespace detail

/// J_n(x), n >= 0.
inline double jn(int n, double x) {
  if (n < 0) return (n % 2 ? -1.0 : 1.0) * jn(-n, x);
  if (x < 0.0) return (n % 2 ? -1.0 : 1.0) * jn(n, -x);
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  if (x < 8.0) return detail::series(n, x);
  if (x < 25.0 || n > x / 2) return detail::miller(n, x)[static_cast<std::size_t>(n)];
  return detail::hankel(n, x);
}

inline double j0(double x) { return jn(0, x); }
inline double j1(double x) { return jn(1, x); }

} // namespace bohm::bessel

#endif // BOHM_BESSEL_HPP
