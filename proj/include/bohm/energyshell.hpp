#ifndef BOHM_ENERGYSHELL_HPP
#define BOHM_ENERGYSHELL_HPP

// Energy-band restricted pair waves in the plane. Lengths are in units of
// lambda_c, wavenumbers in 1/lambda_c, energies in m c^2, masses in m.
//
// The relative wave of a band E- <= k^2/2mu <= E+ is the 2D convolution of
// the Gaussian profile h with the band's disc difference
//   g(x) = [a+ J1(a+ x) - a- J1(a- x)] / x.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <memory>
#include <numbers>
#include <vector>

#include <fftw3.h>

#include "bohm/bessel.hpp"
#include "bohm/error.hpp"

namespace bohm::energyshell {

struct EnergyBand {
  double E_plus = 0.02;
  double E_minus = 0.999 * 0.02;
  double mu = 0.5;
  double lambda_c = 1.0;

  void validate() const {
    if (!(E_minus >= 0.0) || !(E_plus > E_minus)) throw DomainError("EnergyBand: need 0 <= E- < E+");
    if (!(mu > 0.0) || !(lambda_c > 0.0)) throw DomainError("EnergyBand: mu and lambda_c must be positive");
  }
};

/// E+ = 0.02 m c^2, E- = 0.999 E+, 2 mu = m.
inline EnergyBand reference_band() { return {}; }

struct BandEdges {
  double a_plus = 0.0;
  double a_minus = 0.0;
};

/// a = 2 pi sqrt(2 mu E) / hbar with p in m c and hbar = m c lambda_c / 2 pi.
inline double band_radius(double E, double mu, double lambda_c = 1.0) {
  return 4.0 * std::numbers::pi * std::numbers::pi * std::sqrt(2.0 * mu * E) / lambda_c;
}

inline BandEdges band_edges(const EnergyBand &b) {
  b.validate();
  return {band_radius(b.E_plus, b.mu, b.lambda_c), band_radius(b.E_minus, b.mu, b.lambda_c)};
}

struct RadialProfile {
  std::vector<double> xs;
  std::vector<double> values;
};

struct ComplexProfile {
  std::vector<double> xs;
  std::vector<std::complex<double>> values;
};

inline double g_value(const BandEdges &e, double x) {
  x = std::abs(x);
  const double ap = e.a_plus, am = e.a_minus;
  if (x * ap < 1e-4) {
    // J1(z)/z = 1/2 - z^2/16 + ...
    return 0.5 * (ap * ap - am * am) - (std::pow(ap, 4) - std::pow(am, 4)) * x * x / 16.0;
  }
  return (ap * bessel::j1(ap * x) - am * bessel::j1(am * x)) / x;
}

inline RadialProfile g_profile(const EnergyBand &band, const std::vector<double> &xs) {
  const BandEdges e = band_edges(band);
  RadialProfile p{xs, {}};
  p.values.reserve(xs.size());
  for (double x : xs) p.values.push_back(g_value(e, x));
  return p;
}

/// (pi / c)^{3/2} exp(-x^2 / 4c), c = alpha + i t / 2 mu.
inline std::complex<double> h_value(double alpha, double t, double mu, double x) {
  const std::complex<double> c(alpha, t / (2.0 * mu));
  return std::pow(std::numbers::pi / c, 1.5) * std::exp(-x * x / (4.0 * c));
}

inline ComplexProfile h_profile(double alpha, double t, double mu, const std::vector<double> &xs) {
  if (!(alpha > 0.0)) throw DomainError("h_profile: alpha must be positive");
  ComplexProfile p{xs, {}};
  p.values.reserve(xs.size());
  for (double x : xs) p.values.push_back(h_value(alpha, t, mu, x));
  return p;
}

/// alpha for which |h(x, 0)|^2 = exp(-x^2 / 2 alpha) has the given FWHM.
inline double alpha_for_density_fwhm(double fwhm) {
  if (!(fwhm > 0.0)) throw DomainError("alpha_for_density_fwhm: width must be positive");
  return fwhm * fwhm / (8.0 * std::numbers::ln2);
}

/// Share of the integral of g^2 over [0, x_max] that lies in [0, x_cut];
/// `planar` weights with 2 pi x.
inline double g2_fraction(const EnergyBand &band, double x_cut, double x_max, bool planar,
                          std::size_t points = 200000) {
  const BandEdges e = band_edges(band);
  const double dx = x_max / static_cast<double>(points);
  double inner = 0.0, total = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    const double x = (static_cast<double>(i) + 0.5) * dx;
    const double g = g_value(e, x);
    const double w = g * g * (planar ? 2.0 * std::numbers::pi * x : 1.0) * dx;
    total += w;
    if (x <= x_cut) inner += w;
  }
  return inner / total;
}

// --- spectral convolution -------------------------------------------------------

struct SpectralGrid {
  std::size_t n = 4096;
  double half_width = 128.0;

  [[nodiscard]] double dx() const { return 2.0 * half_width / static_cast<double>(n); }
  /// Coordinate of index i with the origin at index 0 (wrap-around order).
  [[nodiscard]] double coord(std::size_t i) const {
    const auto k = static_cast<double>(i < n / 2 ? static_cast<std::ptrdiff_t>(i)
                                                  : static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(n));
    return k * dx();
  }
};

inline constexpr double kMinSamplesPerPeriod = 16.0;

struct ConvolutionResult {
  RadialProfile conv; ///< annular average of |h (x) g|
  double dev_to_h = 0.0;
  double dev_to_g = 0.0;
};

namespace detail {

struct FftwBuffer {
  fftw_complex *data = nullptr;
  explicit FftwBuffer(std::size_t count) {
    data = static_cast<fftw_complex *>(fftw_malloc(sizeof(fftw_complex) * count));
    if (data == nullptr) throw ResourceError("energy_band_convolution: out of memory for the FFT grid");
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer &) = delete;
  FftwBuffer &operator=(const FftwBuffer &) = delete;
  std::complex<double> &operator[](std::size_t i) { return reinterpret_cast<std::complex<double> *>(data)[i]; }
};

inline void fft2d(FftwBuffer &buf, int n, int sign) {
  fftw_plan plan = fftw_plan_dft_2d(n, n, buf.data, buf.data, sign, FFTW_ESTIMATE);
  if (plan == nullptr) throw NumericError("energy_band_convolution: FFT plan failed");
  fftw_execute(plan);
  fftw_destroy_plan(plan);
}

template <typename F>
void fill(FftwBuffer &buf, const SpectralGrid &g, F value_at_radius) {
  for (std::size_t i = 0; i < g.n; ++i) {
    const double x = g.coord(i);
    for (std::size_t j = 0; j < g.n; ++j) buf[i * g.n + j] = value_at_radius(std::hypot(x, g.coord(j)));
  }
}

} // namespace detail

inline void check_resolution(const EnergyBand &band, const SpectralGrid &grid) {
  if (grid.n < 8 || grid.n % 2 != 0 || !(grid.half_width > 0.0))
    throw DomainError("energy_band_convolution: grid needs an even size >= 8 and a positive extent");
  const double period = 2.0 * std::numbers::pi / band_edges(band).a_plus;
  if (period / grid.dx() < kMinSamplesPerPeriod)
    throw ResolutionError("energy_band_convolution: fewer than 16 samples per oscillation period");
}

/// Planar convolution a (x) b of two radial profiles on the grid, in
/// wrap-around order; `b_first` swaps which profile is transformed first.
template <typename A, typename B>
std::vector<std::complex<double>> convolve_radial(const SpectralGrid &grid, A a, B b, bool b_first = false) {
  const std::size_t N = grid.n * grid.n;
  detail::FftwBuffer fa(N), fb(N);
  detail::fill(b_first ? fb : fa, grid, a);
  detail::fill(b_first ? fa : fb, grid, b);
  const int n = static_cast<int>(grid.n);
  detail::fft2d(fa, n, FFTW_FORWARD);
  detail::fft2d(fb, n, FFTW_FORWARD);
  for (std::size_t k = 0; k < N; ++k) fa[k] *= fb[k];
  detail::fft2d(fa, n, FFTW_BACKWARD);
  const double scale = grid.dx() * grid.dx() / static_cast<double>(N);
  std::vector<std::complex<double>> out(N);
  for (std::size_t k = 0; k < N; ++k) out[k] = fa[k] * scale;
  return out;
}

/// Normalized L2 distance between two grid functions: || a/|a| - b/|b| ||.
inline double normalized_distance(double aa, double bb, std::complex<double> ab) {
  const double d2 = 2.0 - 2.0 * ab.real() / std::sqrt(aa * bb);
  return std::sqrt(std::max(0.0, d2));
}

inline ConvolutionResult energy_band_convolution(const EnergyBand &band, double alpha, double t,
                                                 const SpectralGrid &grid = {}) {
  band.validate();
  if (!(alpha > 0.0)) throw DomainError("energy_band_convolution: alpha must be positive");
  check_resolution(band, grid);
  const BandEdges e = band_edges(band);
  auto h = [&](double r) { return h_value(alpha, t, band.mu, r); };
  auto g = [&](double r) { return std::complex<double>(g_value(e, r), 0.0); };

  const auto conv = convolve_radial(grid, h, g);

  double cc = 0.0, hh = 0.0, gg = 0.0;
  std::complex<double> ch = 0.0, cg = 0.0;
  const std::size_t bins = grid.n / 2;
  std::vector<double> sum(bins, 0.0), count(bins, 0.0);
  for (std::size_t i = 0; i < grid.n; ++i) {
    const double x = grid.coord(i);
    for (std::size_t j = 0; j < grid.n; ++j) {
      const double r = std::hypot(x, grid.coord(j));
      const std::complex<double> c = conv[i * grid.n + j];
      const std::complex<double> hv = h(r);
      const double gv = g_value(e, r);
      cc += std::norm(c);
      hh += std::norm(hv);
      gg += gv * gv;
      ch += std::conj(c) * hv;
      cg += std::conj(c) * gv;
      const auto bin = static_cast<std::size_t>(r / grid.dx() + 0.5);
      if (bin < bins) {
        sum[bin] += std::abs(c);
        count[bin] += 1.0;
      }
    }
  }

  ConvolutionResult res;
  res.dev_to_h = normalized_distance(cc, hh, ch);
  res.dev_to_g = normalized_distance(cc, gg, cg);
  for (std::size_t b = 0; b < bins; ++b) {
    if (count[b] == 0.0) continue;
    res.conv.xs.push_back(static_cast<double>(b) * grid.dx());
    res.conv.values.push_back(sum[b] / count[b]);
  }
  return res;
}

// --- guidance speed of the band-limited wave ------------------------------------

struct BandQuadrature {
  std::size_t radial_nodes = 64;
  std::size_t angular_nodes = 256;
  double tolerance = 1e-6;
};

namespace detail {

/// Gauss-Legendre nodes and weights on [-1, 1] (Newton on P_n).
inline void gauss_legendre(std::size_t n, std::vector<double> &x, std::vector<double> &w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

struct WaveAndGradient {
  std::complex<double> psi;
  std::complex<double> dx;
  std::complex<double> dy;
};

/// psi(x) = integral over the annulus of exp(-alpha k^2 - i k^2 t / 2 mu + i k.x) d^2k,
/// with exp(-alpha k_mid^2) factored out to keep narrow-Gaussian cases finite.
inline WaveAndGradient band_wave(double k_lo, double k_hi, double alpha, double t, double mu, double x,
                                 const BandQuadrature &q, std::size_t radial) {
  std::vector<double> gx, gw;
  gauss_legendre(radial, gx, gw);
  const std::complex<double> c(alpha, t / (2.0 * mu));
  const double k_mid = 0.5 * (k_lo + k_hi);
  WaveAndGradient out{};
  const double dth = 2.0 * std::numbers::pi / static_cast<double>(q.angular_nodes);
  for (std::size_t i = 0; i < radial; ++i) {
    const double k = 0.5 * (k_hi - k_lo) * gx[i] + k_mid;
    const double wk = 0.5 * (k_hi - k_lo) * gw[i] * k;
    const std::complex<double> fk = std::exp(-c * (k * k - k_mid * k_mid));
    for (std::size_t j = 0; j < q.angular_nodes; ++j) {
      const double th = dth * static_cast<double>(j);
      const double kx = k * std::cos(th), ky = k * std::sin(th);
      const std::complex<double> term = wk * dth * fk * std::exp(std::complex<double>(0.0, kx * x));
      out.psi += term;
      out.dx += std::complex<double>(0.0, kx) * term;
      out.dy += std::complex<double>(0.0, ky) * term;
    }
  }
  return out;
}

inline double guidance_speed(const WaveAndGradient &w, double mu) {
  const double d = std::norm(w.psi);
  const double vx = (std::conj(w.psi) * w.dx).imag() / d;
  const double vy = (std::conj(w.psi) * w.dy).imag() / d;
  return std::hypot(vx, vy) / mu;
}

} // namespace detail

/// Largest guidance speed |grad phase| / mu of the band-limited wave at the
/// given radii (evaluated on the x axis; the wave is radially symmetric).
inline double band_current_check(const EnergyBand &band, double alpha, double t, const std::vector<double> &points,
                                 const BandQuadrature &q = {}) {
  band.validate();
  if (!(alpha > 0.0)) throw DomainError("band_current_check: alpha must be positive");
  if (points.empty()) throw DomainError("band_current_check: no evaluation radii");
  const BandEdges e = band_edges(band);
  double worst = 0.0;
  for (double x : points) {
    const auto coarse = detail::band_wave(e.a_minus, e.a_plus, alpha, t, band.mu, x, q, q.radial_nodes);
    const auto fine = detail::band_wave(e.a_minus, e.a_plus, alpha, t, band.mu, x, q, 2 * q.radial_nodes);
    if (std::norm(fine.psi) < 1e-300) throw NodeError("band_current_check: wave vanishes at an evaluation radius");
    const double s_coarse = detail::guidance_speed(coarse, band.mu);
    const double s_fine = detail::guidance_speed(fine, band.mu);
    const double scale = std::max(std::abs(s_fine), 1e-300);
    if (std::abs(s_fine - s_coarse) > q.tolerance * scale + 1e-15)
      throw NumericError("band_current_check: quadrature did not converge");
    worst = std::max(worst, s_fine);
  }
  return worst;
}

} // namespace bohm::energyshell

#endif // BOHM_ENERGYSHELL_HPP
