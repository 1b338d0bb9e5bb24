#ifndef BOHM_TRAJECTORIES_HPP
#define BOHM_TRAJECTORIES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "bohm/error.hpp"
#include "bohm/io/csv.hpp"
#include "bohm/vec.hpp"
#include "bohm/wavecore.hpp"

namespace bohm {

inline constexpr double kMaxSteps = 1e8;

/// One classical RK4 step for y' = f(t, y). `State` needs +, and scalar *.
template <typename State, typename Rhs>
State rk4_step(const Rhs &f, double t, const State &y, double h) {
  const State k1 = f(t, y);
  const State k2 = f(t + 0.5 * h, y + (0.5 * h) * k1);
  const State k3 = f(t + 0.5 * h, y + (0.5 * h) * k2);
  const State k4 = f(t + h, y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Number of uniform steps of size <= dt spanning [t0, t1].
inline std::size_t step_count(double t0, double t1, double dt) {
  if (!(dt > 0.0)) throw DomainError("integration: dt must be positive");
  if (!(t1 > t0)) throw DomainError("integration: t_end must exceed the start time");
  const double n = std::ceil((t1 - t0) / dt * (1.0 - 1e-12));
  if (!(n <= kMaxSteps)) throw ResourceError("integration: more than 1e8 steps requested");
  return static_cast<std::size_t>(std::max(1.0, n));
}

struct Trajectory {
  std::vector<double> times;
  std::vector<PairState> states;
  DecayParams params;
};

namespace detail {
struct PairPhase {
  Vec3 r1;
  Vec3 r2;
  friend PairPhase operator+(const PairPhase &a, const PairPhase &b) { return {a.r1 + b.r1, a.r2 + b.r2}; }
  friend PairPhase operator*(double s, const PairPhase &a) { return {s * a.r1, s * a.r2}; }
};
} // namespace detail

/// RK4 integration of the guidance equation from `initial` to `t_end`.
/// Every `stride`-th step is stored; the endpoint always is.
inline Trajectory integrate_pair(const PairWave &wave, const PairState &initial, double t_end, double dt,
                                 std::size_t stride = 1) {
  const std::size_t n = step_count(initial.t, t_end, dt);
  const double h = (t_end - initial.t) / static_cast<double>(n);
  stride = std::max<std::size_t>(stride, 1);

  auto rhs = [&wave](double t, const detail::PairPhase &y) {
    const PairVelocity v = wave.velocity({y.r1, y.r2, t});
    return detail::PairPhase{v.v1, v.v2};
  };

  Trajectory traj{{}, {}, wave.params()};
  traj.times.reserve(n / stride + 2);
  traj.states.reserve(n / stride + 2);
  traj.times.push_back(initial.t);
  traj.states.push_back(initial);

  detail::PairPhase y{initial.r1, initial.r2};
  for (std::size_t i = 0; i < n; ++i) {
    const double t = initial.t + static_cast<double>(i) * h;
    y = rk4_step(rhs, t, y, h);
    const bool last = i + 1 == n;
    if (last || (i + 1) % stride == 0) {
      const double tn = last ? t_end : initial.t + static_cast<double>(i + 1) * h;
      traj.times.push_back(tn);
      traj.states.push_back({y.r1, y.r2, tn});
    }
  }
  return traj;
}

/// Constants of the closed-form limit-wave trajectory: centre of mass `c1`
/// and separation direction `d` (separation at t is d * sqrt(t^2/4mu^2 + alpha^2)).
struct ClosedFormSpec {
  Vec3 c1;
  Vec3 d;
};

inline PairState closed_form_pair(const ClosedFormSpec &spec, const DecayParams &p, double t) {
  if (!p.is_limit()) throw UnsupportedVariantError("closed_form_pair: only the limit wave (sigma = 0) has this closed form");
  const double M = p.total_mass();
  const double tau = t / (2.0 * p.mu());
  const double s = std::sqrt(tau * tau + p.alpha() * p.alpha());
  return {spec.c1 + (p.m2() / M) * s * spec.d, spec.c1 - (p.m1() / M) * s * spec.d, t};
}

/// Inverse of closed_form_pair at a given state.
inline ClosedFormSpec closed_form_spec_for(const PairState &s, const DecayParams &p) {
  const double tau = s.t / (2.0 * p.mu());
  const double scale = std::sqrt(tau * tau + p.alpha() * p.alpha());
  return {collective_coordinate(p, s) / p.total_mass(), (s.r1 - s.r2) / scale};
}

/// Largest perpendicular distance of the points from the chord joining the
/// first and last point, divided by the polyline length. 0 for a straight or
/// static path.
inline double straightness(std::span<const Vec3> pts) {
  if (pts.size() < 3) throw DomainError("straightness_measure: need at least 3 points");
  double length = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) length += norm(pts[i] - pts[i - 1]);
  if (length == 0.0) return 0.0;
  const Vec3 a = pts.front();
  const Vec3 chord = pts.back() - a;
  const double chord_len = norm(chord);
  double worst = 0.0;
  for (const Vec3 &q : pts) {
    const Vec3 rel = q - a;
    const double dist = chord_len > 0.0 ? norm(cross(rel, chord)) / chord_len : norm(rel);
    worst = std::max(worst, dist);
  }
  return worst / length;
}

inline double straightness_measure(const Trajectory &traj) {
  if (traj.states.size() < 3) throw DomainError("straightness_measure: need at least 3 points");
  std::vector<Vec3> p1, p2;
  p1.reserve(traj.states.size());
  p2.reserve(traj.states.size());
  for (const auto &s : traj.states) {
    p1.push_back(s.r1);
    p2.push_back(s.r2);
  }
  return std::max(straightness(p1), straightness(p2));
}

/// Columns t, r1x, r1y, r1z, r2x, r2y, r2z.
inline void write_trajectory_csv(std::ostream &os, const Trajectory &traj) {
  static const std::vector<std::string> header{"t", "r1x", "r1y", "r1z", "r2x", "r2y", "r2z"};
  io::write_csv_header(os, header);
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const auto &s = traj.states[i];
    const double row[] = {traj.times[i], s.r1.x, s.r1.y, s.r1.z, s.r2.x, s.r2.y, s.r2.z};
    io::write_csv_row(os, row);
  }
}

} // namespace bohm

#endif // BOHM_TRAJECTORIES_HPP
