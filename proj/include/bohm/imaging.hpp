#ifndef BOHM_IMAGING_HPP
#define BOHM_IMAGING_HPP

// Unfolded ghost-imaging geometry with massive particles.
//
// Coordinates: the thin lens sits at the origin with optical axis `axis`.
// The aperture (object) plane is at +S along the axis, the scan (image) plane
// at -S'. The pair decays between lens and aperture; particle 1 moves towards
// the aperture with axial speed p0/m1, particle 2 towards the lens with p0/m2.
//
// Transverse motion is treated paraxially and exactly: per transverse
// component the pair wave is the complex Gaussian exp(-x^T Q x / 2) in
// x = (x1, x2). Free flight maps Q -> (Q^-1 + i dt diag(1/m1, 1/m2))^-1, the
// lens multiplies by exp(-i p0 x2^2 / 2f), and detection of particle 1 at a
// conditions the wave on x1 = a, leaving a one-particle Gaussian beam for
// particle 2 whose wavefronts are centred on a.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "bohm/ensemble.hpp"
#include "bohm/error.hpp"
#include "bohm/trajectories.hpp"
#include "bohm/vec.hpp"
#include "bohm/wavecore.hpp"

namespace bohm::imaging {

struct Conjugate {
  double distance = 0.0;
  bool virtual_image = false; ///< object inside the focal length
};

/// Gaussian thin-lens equation 1/S + 1/S' = 1/f solved for S'.
inline Conjugate thin_lens_conjugate(double S, double f) {
  if (!(S > 0.0) || !(f > 0.0)) throw DomainError("thin_lens_conjugate: S and f must be positive");
  if (std::isinf(S)) return {f, false};
  const double inv = 1.0 / f - 1.0 / S;
  if (inv == 0.0) throw InfiniteConjugateError("thin_lens_conjugate: object in the focal plane");
  return {1.0 / inv, S < f};
}

struct LensSetup {
  double f = 1.0;
  double S = 2.0;
  double S_prime = 2.0;
  Vec3 axis{0.0, 0.0, 1.0};

  /// Fills S' from the lens equation when absent.
  static LensSetup make(double f, double S, std::optional<double> S_prime = std::nullopt,
                        Vec3 axis = {0.0, 0.0, 1.0}) {
    LensSetup l{f, S, 0.0, axis / norm(axis)};
    l.S_prime = S_prime ? *S_prime : thin_lens_conjugate(S, f).distance;
    return l;
  }

  /// 1/S + 1/S' - 1/f relative to 1/f.
  [[nodiscard]] double conjugate_mismatch() const { return std::abs((1.0 / S + 1.0 / S_prime - 1.0 / f) * f); }
  [[nodiscard]] double magnification() const { return -S_prime / S; }
};

/// Image of a source lying in the object plane: on the line through the lens
/// centre, in the plane at -S'.
inline Vec3 lens_image_point(const Vec3 &source, const LensSetup &lens) {
  const Vec3 n = lens.axis / norm(lens.axis);
  const double along = dot(source, n);
  if (std::abs(along - lens.S) > 1e-9 * std::max(1.0, std::abs(lens.S)))
    throw DomainError("lens_image_point: source is not in the object plane");
  const Vec3 transverse = source - along * n;
  return -lens.S_prime * n + lens.magnification() * transverse;
}

// --- effective wave after detection ----------------------------------------

/// One-particle wave of particle 2 once particle 1 has been found at `center_a`:
/// (pi / (alpha + i t/2m2))^{3/2} exp(-(a - r2)^2 / 4(alpha + i t/2m2)).
struct SphericalWave {
  Vec3 center_a;
  double alpha = 0.0;
  double t0 = 0.0; ///< collapse time
  double mass = 1.0;

  [[nodiscard]] std::complex<double> width(double t) const { return {alpha, t / (2.0 * mass)}; }

  [[nodiscard]] ComplexAmp amplitude(const Vec3 &r2, double t) const {
    return detail::gaussian_factor(width(t), norm2(center_a - r2));
  }

  /// Unwrapped phase: t |a - r2|^2 / (8 m alpha^2 + 2 t^2 / m) - (3/2) atan(t / 2 m alpha).
  [[nodiscard]] double phase(const Vec3 &r2, double t) const {
    const double m = mass;
    return t * norm2(center_a - r2) / (8.0 * m * alpha * alpha + 2.0 * t * t / m) -
           1.5 * std::atan(t / (2.0 * m * alpha));
  }

  [[nodiscard]] Vec3 phase_gradient(const Vec3 &r2, double t) const {
    const double m = mass;
    return (r2 - center_a) * (2.0 * t / (8.0 * m * alpha * alpha + 2.0 * t * t / m));
  }

  [[nodiscard]] Vec3 velocity(const Vec3 &r2, double t) const { return phase_gradient(r2, t) / mass; }
};

inline SphericalWave collapse_to_detection(const Vec3 &a, const DecayParams &params, double t0) {
  if (!is_finite(a)) throw DomainError("collapse_to_detection: detection point must be finite");
  return {a, params.alpha(), t0, params.m2()};
}

// --- converging Gaussian beam -----------------------------------------------

/// Free minimum-uncertainty packet whose centre moves uniformly with
/// `arrival_momentum` and whose width w(t) = w0 sqrt(1 + ((t - tf) / 2 m w0^2)^2)
/// is smallest (w0) at `focus` at `focus_time`.
struct GaussianBeam {
  Vec3 focus;
  double waist_w0 = 0.0;
  Vec3 arrival_momentum;
  double focus_time = 0.0;
  double mass = 1.0;

  [[nodiscard]] Vec3 center(double t) const { return focus + (arrival_momentum / mass) * (t - focus_time); }

  [[nodiscard]] double width(double t) const {
    const double tau = (t - focus_time) / (2.0 * mass * waist_w0 * waist_w0);
    return waist_w0 * std::hypot(1.0, tau);
  }

  [[nodiscard]] Vec3 velocity(const Vec3 &x, double t) const {
    const double s = 2.0 * mass * waist_w0 * waist_w0;
    const double tau = (t - focus_time) / s;
    return arrival_momentum / mass + (x - center(t)) * (tau / ((1.0 + tau * tau) * s));
  }

  /// Guidance trajectory in closed form: the offset from the centre scales with w(t).
  [[nodiscard]] Vec3 scaled_position(const Vec3 &start, double t_start, double t) const {
    return center(t) + (start - center(t_start)) * (width(t) / width(t_start));
  }
};

struct BeamPath {
  std::vector<double> times;
  std::vector<Vec3> positions;
};

/// RK4 integration of the beam's guidance field from `start` at t_start.
inline BeamPath beam_trajectory_from(const GaussianBeam &beam, const Vec3 &start, double t_start, double t_end,
                                     double dt) {
  if (!(beam.waist_w0 > 0.0)) throw DomainError("beam_trajectory: waist must be positive");
  const std::size_t n = step_count(t_start, t_end, dt);
  const double h = (t_end - t_start) / static_cast<double>(n);
  auto rhs = [&beam](double t, const Vec3 &x) { return beam.velocity(x, t); };
  BeamPath path;
  path.times.reserve(n + 1);
  path.positions.reserve(n + 1);
  path.times.push_back(t_start);
  path.positions.push_back(start);
  Vec3 x = start;
  for (std::size_t i = 0; i < n; ++i) {
    x = rk4_step(rhs, t_start + static_cast<double>(i) * h, x, h);
    path.times.push_back(i + 1 == n ? t_end : t_start + static_cast<double>(i + 1) * h);
    path.positions.push_back(x);
  }
  return path;
}

/// Starts at the beam centre at t_start displaced by `initial_offset` in the
/// plane orthogonal to the arrival momentum.
inline BeamPath beam_trajectory(const GaussianBeam &beam, const Vec2 &initial_offset, double t_start, double t_end,
                                double dt) {
  const Vec3 dir = norm(beam.arrival_momentum) > 0.0 ? beam.arrival_momentum : Vec3{0.0, 0.0, 1.0};
  const TransverseBasis basis(dir);
  return beam_trajectory_from(beam, beam.center(t_start) + basis.embed(initial_offset), t_start, t_end, dt);
}

// --- paraxial transverse pair model ------------------------------------------

namespace detail {

using cd = std::complex<double>;

struct Mat2c {
  cd a, b, c, d; // [[a, b], [c, d]]

  [[nodiscard]] Mat2c inverse() const {
    const cd det = a * d - b * c;
    return {d / det, -b / det, -c / det, a / det};
  }
};

struct Mat2 {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;
  friend Mat2 operator*(const Mat2 &x, const Mat2 &y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend Mat2 operator+(const Mat2 &x, const Mat2 &y) { return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d}; }
  friend Mat2 operator*(double s, const Mat2 &x) { return {s * x.a, s * x.b, s * x.c, s * x.d}; }
};

} // namespace detail

/// Joint transverse wave exp(-x^T Q x / 2) of one transverse component.
class TransversePairWave {
public:
  explicit TransversePairWave(const DecayParams &p) : m1_(p.m1()), m2_(p.m2()) {
    if (p.is_limit()) throw UnsupportedVariantError("imaging: sigma = 0 is not normalizable");
    const double M = p.total_mass();
    const double w1 = p.m1() / M, w2 = p.m2() / M;
    // -R^2 sigma/4 - r^2 / (4 alpha),  R = w1 x1 + w2 x2,  r = x1 - x2
    const double kc = p.sigma() / 2.0, kr = 1.0 / (2.0 * p.alpha());
    q_ref_ = {kc * w1 * w1 + kr, kc * w1 * w2 - kr, kc * w1 * w2 - kr, kc * w2 * w2 + kr};
  }

  [[nodiscard]] detail::Mat2c Q(double t) const {
    detail::Mat2c inv = q_ref_.inverse();
    const double dt = t - t_ref_;
    inv.a += detail::cd(0.0, dt / m1_);
    inv.d += detail::cd(0.0, dt / m2_);
    return inv.inverse();
  }

  /// Thin lens of strength L = p0 / f acting on particle 2 at time t.
  void apply_lens(double t, double strength) {
    q_ref_ = Q(t);
    t_ref_ = t;
    q_ref_.d += detail::cd(0.0, strength);
  }

  /// Velocity field v = A x with A = -diag(1/m1, 1/m2) Im Q.
  [[nodiscard]] detail::Mat2 velocity_matrix(double t) const {
    const detail::Mat2c q = Q(t);
    return {-q.a.imag() / m1_, -q.b.imag() / m1_, -q.c.imag() / m2_, -q.d.imag() / m2_};
  }

  [[nodiscard]] double m1() const { return m1_; }
  [[nodiscard]] double m2() const { return m2_; }

private:
  double m1_, m2_;
  detail::Mat2c q_ref_;
  double t_ref_ = 0.0;
};

/// Particle 2's conditional wave exp(-q (x - z)^2 / 2) for one transverse
/// component, with q and z complex.
class ConditionalBeam {
public:
  ConditionalBeam(detail::cd q, detail::cd z, double t, double mass) : c_(1.0 / (2.0 * q)), z_(z), t_(t), m_(mass) {}

  static ConditionalBeam condition(const TransversePairWave &w, double t, double a) {
    const detail::Mat2c q = w.Q(t);
    return {q.d, -q.b * a / q.d, t, w.m2()};
  }

  [[nodiscard]] detail::cd c_at(double t) const { return c_ + detail::cd(0.0, (t - t_) / (2.0 * m_)); }

  [[nodiscard]] double mean(double t) const {
    const detail::cd ic = 1.0 / c_at(t);
    return (z_ * ic).real() / ic.real();
  }
  [[nodiscard]] double width(double t) const { return std::sqrt(1.0 / (1.0 / c_at(t)).real()); }

  void apply_lens(double t, double strength) {
    const detail::cd q = 1.0 / (2.0 * c_at(t));
    const detail::cd qn = q + detail::cd(0.0, strength);
    z_ = q * z_ / qn;
    c_ = 1.0 / (2.0 * qn);
    t_ = t;
  }

  /// Time of smallest width after the reference time's wave, and that width.
  [[nodiscard]] double focus_time() const { return t_ - 2.0 * m_ * c_.imag(); }
  [[nodiscard]] double waist() const { return width(focus_time()); }
  [[nodiscard]] double mean_velocity() const { return mean(t_ + 1.0) - mean(t_); }

  /// Guidance trajectory through x at time t0, evaluated at t (free flight).
  [[nodiscard]] double scaled_position(double x, double t0, double t) const {
    return mean(t) + (x - mean(t0)) * width(t) / width(t0);
  }

  [[nodiscard]] double velocity(double x, double t) const {
    const detail::cd q = 1.0 / (2.0 * c_at(t));
    return -(q * (detail::cd(x, 0.0) - z_)).imag() / m_;
  }

private:
  detail::cd c_;
  detail::cd z_;
  double t_;
  double m_;
};

// --- aperture and scan --------------------------------------------------------

struct ApertureMask {
  enum class Shape { Open, Slit, Disk, DoubleSlit };
  Shape shape = Shape::Open;
  double width = 0.0;      ///< slit width
  double radius = 0.0;     ///< disk radius
  double separation = 0.0; ///< double-slit centre-to-centre distance
  Vec2 center;             ///< transverse centre of the mask pattern
  double plane_offset = 0.0;

  void validate() const {
    switch (shape) {
    case Shape::Open: break;
    case Shape::Slit:
      if (!(width > 0.0)) throw DomainError("aperture: slit width must be positive");
      break;
    case Shape::Disk:
      if (!(radius > 0.0)) throw DomainError("aperture: disk radius must be positive");
      break;
    case Shape::DoubleSlit:
      if (!(width > 0.0) || !(separation > width))
        throw DomainError("aperture: double slit needs 0 < width < separation");
      break;
    }
  }

  [[nodiscard]] bool passes(const Vec2 &p) const {
    const double du = p.u - center.u, dv = p.v - center.v;
    switch (shape) {
    case Shape::Open: return true;
    case Shape::Slit: return std::abs(du) <= 0.5 * width;
    case Shape::Disk: return du * du + dv * dv <= radius * radius;
    case Shape::DoubleSlit: return std::abs(std::abs(du) - 0.5 * separation) <= 0.5 * width;
    }
    return false;
  }

  /// Transverse centres of the open regions along u.
  [[nodiscard]] std::vector<double> opening_centers() const {
    if (shape == Shape::DoubleSlit) return {center.u - 0.5 * separation, center.u + 0.5 * separation};
    return {center.u};
  }
};

struct ImagingOptions {
  double p0 = 1.0;             ///< axial momentum of each particle
  double decay_fraction = 0.5; ///< decay plane position between lens (0) and aperture (1)
  double scan_lo = -2.0;
  double scan_hi = 2.0;
  std::uint64_t max_attempts = 1'000'000'000ULL;
  std::size_t record_tracks = 0;
  std::size_t track_points = 40;
  std::size_t flow_steps = 4000;
};

struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> counts;

  [[nodiscard]] double bin_width() const { return (hi - lo) / static_cast<double>(counts.size()); }
  [[nodiscard]] double bin_center(std::size_t i) const { return lo + (static_cast<double>(i) + 0.5) * bin_width(); }
  void add(double x) {
    if (x < lo || x >= hi) return;
    auto i = static_cast<std::size_t>((x - lo) / bin_width());
    counts[std::min(i, counts.size() - 1)] += 1.0;
  }
};

struct TrackPoint {
  double t = 0.0;
  Vec3 position;
};

struct Track {
  std::size_t coincidence = 0;
  int particle = 1;
  std::vector<TrackPoint> points;
};

struct ImageResult {
  Histogram image;
  std::size_t accepted = 0;
  std::uint64_t attempts = 0;
  double mean = 0.0; ///< mean scan coordinate of all coincidences
  double rms = 0.0;  ///< standard deviation of the scan coordinate
  double waist = 0.0; ///< particle-2 beam waist of the last coincidence
  std::vector<Track> tracks;
};

namespace detail {

/// Flow map x(t) = Phi(t) x(0) of the joint transverse guidance field,
/// sampled on an RK4 grid, with the lens applied at t_lens if inside.
struct JointFlow {
  std::vector<double> times;
  std::vector<Mat2> phi;

  JointFlow(TransversePairWave wave, double t_end, std::optional<double> t_lens, double strength, std::size_t steps) {
    times.push_back(0.0);
    phi.push_back(Mat2{});
    auto run = [&](double a, double b, std::size_t n) {
      if (!(b > a)) return;
      const double h = (b - a) / static_cast<double>(n);
      auto rhs = [&wave](double t, const Mat2 &y) { return wave.velocity_matrix(t) * y; };
      Mat2 y = phi.back();
      for (std::size_t i = 0; i < n; ++i) {
        y = rk4_step(rhs, a + static_cast<double>(i) * h, y, h);
        times.push_back(i + 1 == n ? b : a + static_cast<double>(i + 1) * h);
        phi.push_back(y);
      }
    };
    if (t_lens && *t_lens < t_end) {
      const auto n1 = std::max<std::size_t>(1, static_cast<std::size_t>(steps * (*t_lens / t_end)));
      run(0.0, *t_lens, n1);
      wave.apply_lens(*t_lens, strength);
      run(*t_lens, t_end, std::max<std::size_t>(1, steps - n1));
    } else {
      run(0.0, t_end, steps);
    }
  }

  [[nodiscard]] const Mat2 &at_end() const { return phi.back(); }
};

} // namespace detail

/// Monte Carlo coincidence image. `spec.n` is the number of coincidences to
/// collect; attempts stop at `opt.max_attempts`.
inline ImageResult ghost_image_scan(const LensSetup &lens, const ApertureMask &mask, const EnsembleSpec &spec,
                                    std::size_t scan_bins, const ImagingOptions &opt = {}) {
  if (spec.n == 0) throw EmptyImageError("ghost_image_scan: no coincidences requested");
  spec.validate();
  mask.validate();
  if (scan_bins == 0 || !(opt.scan_hi > opt.scan_lo)) throw DomainError("ghost_image_scan: bad scan grid");
  if (!(opt.p0 > 0.0)) throw DomainError("ghost_image_scan: p0 must be positive");
  if (!(opt.decay_fraction > 0.0 && opt.decay_fraction < 1.0))
    throw DomainError("ghost_image_scan: decay plane must lie between lens and aperture");

  const auto &p = spec.params;
  const double S_mask = lens.S + mask.plane_offset;
  if (!(S_mask > 0.0)) throw DomainError("ghost_image_scan: aperture plane behind the lens");
  const double u1 = opt.p0 / p.m1(), u2 = opt.p0 / p.m2();
  const double z_decay = opt.decay_fraction * S_mask;
  const double t1 = (S_mask - z_decay) / u1; // particle 1 at the aperture
  const double t2 = z_decay / u2;            // particle 2 at the lens
  const double t_scan = t2 + lens.S_prime / u2;
  const double strength = opt.p0 / lens.f;

  const TransversePairWave free_wave(p);
  TransversePairWave at_collapse = free_wave;
  if (t2 < t1) at_collapse.apply_lens(t2, strength);
  const detail::JointFlow flow(free_wave, t1, t2 < t1 ? std::optional<double>(t2) : std::nullopt, strength,
                               opt.flow_steps);
  const detail::Mat2 phi = flow.at_end();

  const Vec3 n = lens.axis / norm(lens.axis);
  const TransverseBasis basis(n);

  auto eng = make_engine(spec.seed, stream::imaging);
  std::normal_distribution<double> cm(0.0, 1.0 / std::sqrt(p.sigma()));
  std::normal_distribution<double> rel(0.0, std::sqrt(p.alpha()));
  const double M = p.total_mass();

  ImageResult res;
  res.image = {opt.scan_lo, opt.scan_hi, std::vector<double>(scan_bins, 0.0)};
  double mean = 0.0, m2 = 0.0;

  while (res.accepted < spec.n) {
    if (res.attempts >= opt.max_attempts) break;
    ++res.attempts;
    // Transverse equilibrium sample at decay, per component (u, v).
    std::array<double, 2> x1_0{}, x2_0{};
    for (int k = 0; k < 2; ++k) {
      const double R = cm(eng), r = rel(eng);
      x1_0[k] = R + (p.m2() / M) * r;
      x2_0[k] = R - (p.m1() / M) * r;
    }
    std::array<double, 2> a{}, x2_c{};
    for (int k = 0; k < 2; ++k) {
      a[k] = phi.a * x1_0[k] + phi.b * x2_0[k];
      x2_c[k] = phi.c * x1_0[k] + phi.d * x2_0[k];
    }
    if (!mask.passes({a[0], a[1]})) continue;

    // Detection of particle 1 at a: particle 2 continues in the conditional beam.
    std::array<double, 2> image{};
    std::array<ConditionalBeam, 2> beams{ConditionalBeam::condition(at_collapse, t1, a[0]),
                                         ConditionalBeam::condition(at_collapse, t1, a[1])};
    std::array<double, 2> x2_lens{};
    for (int k = 0; k < 2; ++k) {
      auto &b = beams[static_cast<std::size_t>(k)];
      double x = x2_c[k];
      double t_now = t1;
      if (t2 >= t1) {
        x = b.scaled_position(x, t1, t2);
        b.apply_lens(t2, strength);
        t_now = t2;
      }
      x2_lens[k] = x;
      image[k] = b.scaled_position(x, t_now, t_scan);
    }
    res.waist = beams[0].waist();

    const double u = image[0];
    res.image.add(u);
    ++res.accepted;
    const double d = u - mean;
    mean += d / static_cast<double>(res.accepted);
    m2 += d * (u - mean);

    if (res.tracks.size() < 2 * opt.record_tracks) {
      const std::size_t id = res.accepted - 1;
      Track p1{id, 1, {}}, p2{id, 2, {}};
      const std::size_t stride = std::max<std::size_t>(1, flow.times.size() / opt.track_points);
      for (std::size_t i = 0; i < flow.times.size(); i += stride) {
        const double t = flow.times[i];
        const auto &f = flow.phi[i];
        Vec3 q1 = (z_decay + u1 * t) * n, q2 = (z_decay - u2 * t) * n;
        for (int k = 0; k < 2; ++k) {
          const Vec3 e = k == 0 ? basis.e1 : basis.e2;
          q1 += (f.a * x1_0[k] + f.b * x2_0[k]) * e;
          q2 += (f.c * x1_0[k] + f.d * x2_0[k]) * e;
        }
        p1.points.push_back({t, q1});
        p2.points.push_back({t, q2});
      }
      p1.points.push_back({t1, S_mask * n + a[0] * basis.e1 + a[1] * basis.e2});
      // Particle 2 after detection of particle 1.
      for (std::size_t i = 1; i <= opt.track_points; ++i) {
        const double t = t1 + (t_scan - t1) * static_cast<double>(i) / static_cast<double>(opt.track_points);
        Vec3 q = (z_decay - u2 * t) * n;
        for (int k = 0; k < 2; ++k) {
          const auto &b = beams[static_cast<std::size_t>(k)];
          double x;
          if (t2 >= t1 && t < t2) {
            const ConditionalBeam pre = ConditionalBeam::condition(at_collapse, t1, a[k]);
            x = pre.scaled_position(x2_c[k], t1, t);
          } else {
            const double t_ref = t2 >= t1 ? t2 : t1;
            const double x_ref = t2 >= t1 ? x2_lens[k] : x2_c[k];
            x = b.scaled_position(x_ref, t_ref, t);
          }
          q += x * (k == 0 ? basis.e1 : basis.e2);
        }
        p2.points.push_back({t, q});
      }
      res.tracks.push_back(std::move(p1));
      res.tracks.push_back(std::move(p2));
    }
  }

  if (res.accepted == 0) throw EmptyImageError("ghost_image_scan: no coincidences passed the aperture");
  res.mean = mean;
  res.rms = res.accepted > 1 ? std::sqrt(m2 / static_cast<double>(res.accepted - 1)) : 0.0;
  return res;
}

/// Gaussian beam guiding particle 2 after the lens when particle 1 was found
/// at transverse position `a` (object plane at S). Centre and width follow the
/// conditional wave; the focus is where that width is smallest.
struct ImagingBeam {
  GaussianBeam beam;
  double lens_time = 0.0; ///< arrival of the beam centre at the lens
};

inline ImagingBeam imaging_beam(const LensSetup &lens, const DecayParams &p, const Vec2 &a, double p0 = 1.0) {
  const double u1 = p0 / p.m1(), u2 = p0 / p.m2();
  const double z_decay = 0.5 * lens.S;
  const double t1 = (lens.S - z_decay) / u1;
  const double t_lens = z_decay / u2;
  const double strength = p0 / lens.f;
  TransversePairWave w(p);
  if (t_lens < t1) w.apply_lens(t_lens, strength);
  ConditionalBeam bu = ConditionalBeam::condition(w, t1, a.u);
  ConditionalBeam bv = ConditionalBeam::condition(w, t1, a.v);
  if (t_lens >= t1) {
    bu.apply_lens(t_lens, strength);
    bv.apply_lens(t_lens, strength);
  }
  const Vec3 n = lens.axis / norm(lens.axis);
  const TransverseBasis basis(n);
  const double tf = bu.focus_time();
  if (!std::isfinite(tf) || !std::isfinite(bu.waist()) || !std::isfinite(bv.waist()))
    throw NumericError("imaging_beam: conditional wave is degenerate for these widths");
  GaussianBeam beam;
  beam.mass = p.m2();
  beam.focus_time = tf;
  beam.waist_w0 = bu.waist();
  beam.focus = -(u2 * (tf - t_lens)) * n + bu.mean(tf) * basis.e1 + bv.mean(tf) * basis.e2;
  beam.arrival_momentum = p.m2() * (-u2 * n + bu.mean_velocity() * basis.e1 + bv.mean_velocity() * basis.e2);
  return {beam, t_lens};
}

} // namespace bohm::imaging

#endif // BOHM_IMAGING_HPP
