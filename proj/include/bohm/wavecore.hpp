#ifndef BOHM_WAVECORE_HPP
#define BOHM_WAVECORE_HPP

// Momentum-entangled pair wavefunctions in natural units (hbar = 1).
//
// Both waves are superpositions of free two-particle plane waves with a
// momentum distribution concentrated near p1 + p2 = 0:
//
//   Limit:        F = delta(p1 + p2) exp(-alpha p1^2)
//   Regularized:  F = exp(-(p1 + p2)^2 / sigma) exp(-alpha q^2),
//                 q = (m2 p1 - m1 p2) / M   (relative momentum)
//
// Writing P = p1 + p2 and R = (m1 r1 + m2 r2) / M, every Gaussian integral
// separates into a relative factor in r = r1 - r2 and a centre-of-mass factor
// in R, each of the form (pi / c)^{3/2} exp(-x^2 / 4c) with a complex
// width parameter c = c_re + i t / (2 m_eff).

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "bohm/error.hpp"
#include "bohm/vec.hpp"

namespace bohm {

using ComplexAmp = std::complex<double>;

/// |psi|^2 below this is treated as a node of the guidance field.
inline constexpr double kDensityFloor = 1e-300;

inline double reduced_mass(double m1, double m2) {
  if (!(m1 > 0.0) || !(m2 > 0.0)) throw DomainError("reduced_mass: masses must be positive");
  return m1 * m2 / (m1 + m2);
}

class DecayParams {
public:
  DecayParams(double m1, double m2, double alpha, double sigma)
      : m1_(m1), m2_(m2), alpha_(alpha), sigma_(sigma) {
    if (!(m1 > 0.0) || !(m2 > 0.0)) throw DomainError("DecayParams: masses must be positive");
    if (!(alpha > 0.0)) throw DomainError("DecayParams: alpha must be positive");
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw DomainError("DecayParams: sigma must be >= 0");
    mu_ = reduced_mass(m1, m2);
  }

  [[nodiscard]] double m1() const noexcept { return m1_; }
  [[nodiscard]] double m2() const noexcept { return m2_; }
  [[nodiscard]] double mu() const noexcept { return mu_; }
  [[nodiscard]] double total_mass() const noexcept { return m1_ + m2_; }
  [[nodiscard]] double alpha() const noexcept { return alpha_; }
  [[nodiscard]] double sigma() const noexcept { return sigma_; }
  [[nodiscard]] bool is_limit() const noexcept { return sigma_ == 0.0; }

  [[nodiscard]] DecayParams with_sigma(double sigma) const { return {m1_, m2_, alpha_, sigma}; }

private:
  double m1_;
  double m2_;
  double alpha_;
  double sigma_;
  double mu_ = 0.0;
};

struct PairState {
  Vec3 r1;
  Vec3 r2;
  double t = 0.0;
};

inline Vec3 collective_coordinate(const DecayParams &p, const PairState &s) noexcept {
  return p.m1() * s.r1 + p.m2() * s.r2;
}

struct PairVelocity {
  Vec3 v1;
  Vec3 v2;
};

namespace detail {

/// (pi / c)^{3/2} exp(-x2 / 4c) for complex c with Re c > 0.
inline ComplexAmp gaussian_factor(std::complex<double> c, double x2) {
  return std::pow(std::numbers::pi / c, 1.5) * std::exp(-x2 / (4.0 * c));
}

/// log |(pi / c)^{3/2} exp(-x2 / 4c)|^2
inline double gaussian_log_density(std::complex<double> c, double x2) {
  const double mod2 = std::norm(c);
  return 3.0 * std::log(std::numbers::pi / std::sqrt(mod2)) - 0.5 * x2 * c.real() / mod2;
}

} // namespace detail

/// Growth factor of the relative separation, |r(t)| / |r(0)| along a
/// guidance trajectory: sqrt(alpha^2 + t^2/4mu^2) / alpha.
inline double relative_stretch(const DecayParams &p, double t) noexcept {
  const double tau = t / (2.0 * p.mu());
  return std::hypot(p.alpha(), tau) / p.alpha();
}

/// Growth factor of the centre of mass, |R(t)| / |R(0)|; identically 1 for
/// the limit wave.
inline double cm_stretch(const DecayParams &p, double t) noexcept {
  if (p.is_limit()) return 1.0;
  return std::hypot(1.0, p.sigma() * t / (2.0 * p.total_mass()));
}

/// d/dt log relative_stretch
inline double relative_rate(const DecayParams &p, double t) noexcept {
  const double tau = t / (2.0 * p.mu());
  return tau / (2.0 * p.mu() * (p.alpha() * p.alpha() + tau * tau));
}

/// d/dt log cm_stretch
inline double cm_rate(const DecayParams &p, double t) noexcept {
  if (p.is_limit()) return 0.0;
  const double k = p.sigma() / (2.0 * p.total_mass());
  return k * k * t / (1.0 + k * k * t * t);
}

enum class WaveVariant { Limit, Regularized };

class PairWave {
public:
  /// sigma == 0 selects the limit wave.
  explicit PairWave(DecayParams params) : params_(params) {}

  [[nodiscard]] const DecayParams &params() const noexcept { return params_; }
  [[nodiscard]] WaveVariant variant() const noexcept {
    return params_.is_limit() ? WaveVariant::Limit : WaveVariant::Regularized;
  }

  /// Width parameter of the relative factor, alpha + i t / 2mu.
  [[nodiscard]] std::complex<double> relative_width(double t) const noexcept {
    return {params_.alpha(), t / (2.0 * params_.mu())};
  }
  /// Width parameter of the centre-of-mass factor, 1/sigma + i t / 2M.
  [[nodiscard]] std::complex<double> cm_width(double t) const noexcept {
    return {1.0 / params_.sigma(), t / (2.0 * params_.total_mass())};
  }

  [[nodiscard]] ComplexAmp amplitude(const PairState &s) const {
    const ComplexAmp rel = detail::gaussian_factor(relative_width(s.t), norm2(s.r1 - s.r2));
    if (params_.is_limit()) return rel;
    const Vec3 R = collective_coordinate(params_, s) / params_.total_mass();
    return rel * detail::gaussian_factor(cm_width(s.t), norm2(R));
  }

  [[nodiscard]] double log_density(const PairState &s) const {
    double ld = detail::gaussian_log_density(relative_width(s.t), norm2(s.r1 - s.r2));
    if (!params_.is_limit()) {
      const Vec3 R = collective_coordinate(params_, s) / params_.total_mass();
      ld += detail::gaussian_log_density(cm_width(s.t), norm2(R));
    }
    return ld;
  }

  [[nodiscard]] double density(const PairState &s) const { return std::exp(log_density(s)); }

  /// Guidance velocities Re(psi* p_j psi) / (m_j |psi|^2) from the closed-form
  /// phase gradient.
  [[nodiscard]] PairVelocity velocity(const PairState &s) const {
    if (log_density(s) < std::log(kDensityFloor)) throw NodeError("pair_velocity: density below floor");
    return velocity_unchecked(s);
  }

  [[nodiscard]] PairVelocity velocity_unchecked(const PairState &s) const noexcept {
    const double M = params_.total_mass();
    const Vec3 r_dot = (s.r1 - s.r2) * relative_rate(params_, s.t);
    const Vec3 R_dot = (collective_coordinate(params_, s) / M) * cm_rate(params_, s.t);
    return {R_dot + (params_.m2() / M) * r_dot, R_dot - (params_.m1() / M) * r_dot};
  }

private:
  DecayParams params_;
};

inline ComplexAmp eval_pair_wave(const PairWave &w, const PairState &s) { return w.amplitude(s); }
inline PairVelocity pair_velocity(const PairWave &w, const PairState &s) { return w.velocity(s); }

// --- density peak --------------------------------------------------------

/// Cubic grid over the collective coordinate C = m1 r1 + m2 r2 at a fixed
/// relative separation r1 - r2.
struct CollectiveGrid {
  double half_width = 10.0;
  int points = 41; ///< per axis; odd counts include C = 0
  Vec3 separation{1.0, 0.0, 0.0};
};

struct PeakReport {
  Vec3 argmax;            ///< collective coordinate of the density maximum
  double deviation = 0.0; ///< |m1 r1 + m2 r2| at the maximum
  double cell = 0.0;      ///< grid spacing
  bool degenerate = false;
  /// Density-weighted standard deviation of C_x over the grid; infinite when
  /// the density is flat.
  double collective_std = 0.0;
};

inline PeakReport density_peak_check(const PairWave &wave, double t, const CollectiveGrid &grid) {
  if (grid.points < 1 || !(grid.half_width > 0.0))
    throw DomainError("density_peak_check: empty grid");
  const auto &p = wave.params();
  const double M = p.total_mass();
  const int n = grid.points;
  const double cell = n > 1 ? 2.0 * grid.half_width / (n - 1) : 0.0;
  auto coord = [&](int i) { return n > 1 ? -grid.half_width + i * cell : 0.0; };

  std::vector<double> logd;
  logd.reserve(static_cast<std::size_t>(n) * n * n);
  double best = -std::numeric_limits<double>::infinity();
  double worst = std::numeric_limits<double>::infinity();
  Vec3 argmax;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Vec3 C{coord(i), coord(j), coord(k)};
        const Vec3 R = C / M;
        const PairState s{R + (p.m2() / M) * grid.separation, R - (p.m1() / M) * grid.separation, t};
        const double ld = wave.log_density(s);
        logd.push_back(ld);
        worst = std::min(worst, ld);
        if (ld > best) {
          best = ld;
          argmax = C;
        }
      }

  PeakReport rep;
  rep.cell = cell;
  rep.degenerate = (best - worst) <= 1e-12 * std::max(1.0, std::abs(best));
  if (rep.degenerate) {
    // Flat: report the grid point nearest the origin.
    const int mid = n / 2;
    rep.argmax = {coord(mid), coord(mid), coord(mid)};
    rep.collective_std = std::numeric_limits<double>::infinity();
  } else {
    rep.argmax = argmax;
    double w_sum = 0.0, m1 = 0.0, m2 = 0.0;
    std::size_t idx = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k, ++idx) {
          const double w = std::exp(logd[idx] - best);
          const double cx = coord(i);
          w_sum += w;
          m1 += w * cx;
          m2 += w * cx * cx;
        }
    const double mean = m1 / w_sum;
    rep.collective_std = std::sqrt(std::max(0.0, m2 / w_sum - mean * mean));
  }
  rep.deviation = norm(rep.argmax);
  return rep;
}

} // namespace bohm

#endif // BOHM_WAVECORE_HPP
