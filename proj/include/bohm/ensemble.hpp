#ifndef BOHM_ENSEMBLE_HPP
#define BOHM_ENSEMBLE_HPP

// Quantum-equilibrium ensembles of the regularized pair wave.
//
// At t = 0 the density factorizes into independent Gaussians:
//   R_j ~ N(0, 1/sigma)  (centre of mass),  r_j ~ N(0, alpha)  (relative).
// Guidance trajectories of a Gaussian packet scale every coordinate with the
// packet width, so the ensemble at time t is R(0) * cm_stretch(t) and
// r(0) * relative_stretch(t). Momenta are drawn from |F|^2:
//   P_j ~ N(0, sigma/4),  q_j ~ N(0, 1/(4 alpha)).

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "bohm/error.hpp"
#include "bohm/vec.hpp"
#include "bohm/wavecore.hpp"

namespace bohm {

/// Reproducible engine for a (seed, stream) pair. Distinct streams give
/// independent sequences.
inline std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

namespace stream {
inline constexpr std::uint64_t positions = 1;
inline constexpr std::uint64_t momenta = 2;
inline constexpr std::uint64_t imaging = 3;
} // namespace stream

struct EnsembleSpec {
  std::size_t n = 1;
  std::uint64_t seed = 0;
  DecayParams params;

  void validate() const {
    if (n < 1) throw DomainError("EnsembleSpec: n must be >= 1");
    if (params.is_limit()) throw UnsupportedVariantError("EnsembleSpec: sigma = 0 is not normalizable");
  }
};

struct MomentumPair {
  Vec3 p1;
  Vec3 p2;
};

/// Per-component variances of the analytic Gaussian state.
inline double momentum_sum_variance(const DecayParams &p) { return p.sigma() / 4.0; }
inline double collective_variance_at_zero(const DecayParams &p) {
  return p.total_mass() * p.total_mass() / p.sigma();
}
/// Var(m1 r1j + m2 r2j)(t) = Var(0) + Var(p1j + p2j) t^2
inline double collective_variance_analytic(const DecayParams &p, double t) {
  return collective_variance_at_zero(p) + momentum_sum_variance(p) * t * t;
}

inline PairState make_pair(const DecayParams &p, const Vec3 &R, const Vec3 &r, double t) {
  const double M = p.total_mass();
  return {R + (p.m2() / M) * r, R - (p.m1() / M) * r, t};
}

inline std::vector<PairState> sample_equilibrium(const EnsembleSpec &spec) {
  spec.validate();
  const auto &p = spec.params;
  auto eng = make_engine(spec.seed, stream::positions);
  std::normal_distribution<double> cm(0.0, 1.0 / std::sqrt(p.sigma()));
  std::normal_distribution<double> rel(0.0, std::sqrt(p.alpha()));
  std::vector<PairState> out;
  out.reserve(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    const Vec3 R{cm(eng), cm(eng), cm(eng)};
    const Vec3 r{rel(eng), rel(eng), rel(eng)};
    out.push_back(make_pair(p, R, r, 0.0));
  }
  return out;
}

inline std::vector<MomentumPair> sample_momenta(const EnsembleSpec &spec) {
  spec.validate();
  const auto &p = spec.params;
  auto eng = make_engine(spec.seed, stream::momenta);
  std::normal_distribution<double> sum(0.0, std::sqrt(momentum_sum_variance(p)));
  std::normal_distribution<double> rel(0.0, 1.0 / (2.0 * std::sqrt(p.alpha())));
  const double M = p.total_mass();
  std::vector<MomentumPair> out;
  out.reserve(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    const Vec3 P{sum(eng), sum(eng), sum(eng)};
    const Vec3 q{rel(eng), rel(eng), rel(eng)};
    out.push_back({(p.m1() / M) * P + q, (p.m2() / M) * P - q});
  }
  return out;
}

/// Position at time t of the guidance trajectory through `s` (any time).
inline PairState propagate(const DecayParams &p, const PairState &s, double t) {
  const double M = p.total_mass();
  const Vec3 R = collective_coordinate(p, s) / M;
  const Vec3 r = s.r1 - s.r2;
  const double cm_scale = cm_stretch(p, t) / cm_stretch(p, s.t);
  const double rel_scale = relative_stretch(p, t) / relative_stretch(p, s.t);
  return make_pair(p, R * cm_scale, r * rel_scale, t);
}

inline std::vector<PairState> propagate_all(const DecayParams &p, const std::vector<PairState> &states, double t) {
  std::vector<PairState> out;
  out.reserve(states.size());
  for (const auto &s : states) out.push_back(propagate(p, s, t));
  return out;
}

/// Sample mean, variance and the standard error of the variance estimate
/// (from the fourth central moment).
struct MomentSummary {
  double mean = 0.0;
  double variance = 0.0;
  double variance_se = 0.0;
  double mean_se = 0.0;
};

template <typename Range, typename Proj>
MomentSummary summarize(const Range &range, Proj proj) {
  double n = 0.0, mean = 0.0;
  for (const auto &x : range) {
    n += 1.0;
    mean += (proj(x) - mean) / n;
  }
  double m2 = 0.0, m4 = 0.0;
  for (const auto &x : range) {
    const double d = proj(x) - mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  MomentSummary s;
  s.mean = mean;
  if (n < 2.0) return s;
  s.variance = m2 / (n - 1.0);
  const double c2 = m2 / n;
  const double c4 = m4 / n;
  s.variance_se = std::sqrt(std::max(0.0, c4 - c2 * c2) / n);
  s.mean_se = std::sqrt(s.variance / n);
  return s;
}

struct VarianceReport {
  double t = 0.0;
  double analytic = 0.0;
  double empirical = 0.0;
  double std_error = 0.0;
};

/// Variance of the x component of m1 r1 + m2 r2 at time t.
inline VarianceReport collective_variance(const EnsembleSpec &spec, double t) {
  const auto &p = spec.params;
  const auto states = propagate_all(p, sample_equilibrium(spec), t);
  const auto s = summarize(states, [&](const PairState &st) { return collective_coordinate(p, st).x; });
  return {t, collective_variance_analytic(p, t), s.variance, s.variance_se};
}

struct HeisenbergReport {
  double analytic_ratio = 0.0;
  double mc_ratio = 0.0;
  double mc_std_error = 0.0;
};

/// Delta(p1j + p2j) Delta(m1 r1j + m2 r2j) at t = 0 in units of (m1 + m2)/2.
inline HeisenbergReport heisenberg_product(const EnsembleSpec &spec) {
  const auto &p = spec.params;
  const double bound = p.total_mass() / 2.0;
  HeisenbergReport rep;
  rep.analytic_ratio = std::sqrt(momentum_sum_variance(p) * collective_variance_at_zero(p)) / bound;

  const auto states = sample_equilibrium(spec);
  const auto moms = sample_momenta(spec);
  const auto sc = summarize(states, [&](const PairState &st) { return collective_coordinate(p, st).x; });
  const auto sp = summarize(moms, [](const MomentumPair &m) { return m.p1.x + m.p2.x; });
  rep.mc_ratio = std::sqrt(sc.variance * sp.variance) / bound;
  const double rc = sc.variance_se / sc.variance;
  const double rp = sp.variance_se / sp.variance;
  rep.mc_std_error = rep.mc_ratio * 0.5 * std::hypot(rc, rp);
  return rep;
}

struct Cone {
  Vec3 axis{0.0, 0.0, 1.0};
  double half_angle = 0.0;

  [[nodiscard]] bool contains(const Vec3 &v) const {
    const double n = norm(v);
    if (n == 0.0) return false;
    return dot(v, axis) / (n * norm(axis)) >= std::cos(half_angle);
  }
};

struct ConeReport {
  double position_fraction = 0.0;
  double momentum_fraction = 0.0;
  double std_error = 0.0; ///< combined binomial standard error of the difference
};

inline ConeReport cone_probability_check(const EnsembleSpec &spec, const Cone &cone, double t) {
  if (!(t > 0.0)) throw DomainError("cone_probability_check: t must be positive");
  if (!(cone.half_angle > 0.0) || !(cone.half_angle <= std::numbers::pi))
    throw DomainError("cone_probability_check: half angle must be in (0, pi]");
  if (!(norm(cone.axis) > 0.0)) throw DomainError("cone_probability_check: zero cone axis");
  const auto &p = spec.params;
  const double M = p.total_mass();
  const bool full = cone.half_angle >= std::numbers::pi;

  const auto states = propagate_all(p, sample_equilibrium(spec), t);
  const auto moms = sample_momenta(spec);
  std::size_t in_pos = 0, in_mom = 0;
  for (const auto &s : states) {
    const Vec3 from_cm = s.r1 - collective_coordinate(p, s) / M;
    in_pos += (full || cone.contains(from_cm)) ? 1 : 0;
  }
  for (const auto &m : moms) in_mom += (full || cone.contains(m.p1)) ? 1 : 0;

  const double n = static_cast<double>(spec.n);
  ConeReport rep;
  rep.position_fraction = static_cast<double>(in_pos) / n;
  rep.momentum_fraction = static_cast<double>(in_mom) / n;
  rep.std_error = std::sqrt((rep.position_fraction * (1.0 - rep.position_fraction) +
                             rep.momentum_fraction * (1.0 - rep.momentum_fraction)) / n);
  return rep;
}

struct AngularReport {
  double tan_theta_estimate = 0.0;
  double small_t_asymptote = 0.0;
  double large_t_asymptote = 0.0;
};

/// Transverse spread of r1 + r2 measured against the distance p t / m
/// travelled; requires equal masses.
inline AngularReport angular_deviation(const EnsembleSpec &spec, double t) {
  const auto &p = spec.params;
  if (!(t > 0.0)) throw DomainError("angular_deviation: t must be positive");
  if (p.m1() != p.m2()) throw DomainError("angular_deviation: equal masses required");
  const double m = p.m1();

  const auto initial = sample_equilibrium(spec);
  const auto later = propagate_all(p, initial, t);
  const auto moms = sample_momenta(spec);
  auto sum_x = [](const PairState &s) { return s.r1.x + s.r2.x; };
  const double spread0 = std::sqrt(summarize(initial, sum_x).variance);
  const double spread_t = std::sqrt(summarize(later, sum_x).variance);
  const double dp_sum = std::sqrt(summarize(moms, [](const MomentumPair &mp) { return mp.p1.x + mp.p2.x; }).variance);
  double p_bar = 0.0;
  for (const auto &mp : moms) p_bar += norm(mp.p1);
  p_bar /= static_cast<double>(moms.size());

  const double travelled = p_bar * t / m;
  return {spread_t / travelled, spread0 / travelled, dp_sum / p_bar};
}

/// Time at which the source-width and momentum-spread contributions to the
/// transverse deviation are equal: L(0) m / Delta(p1j + p2j). Equal masses.
inline double crossover_time(const DecayParams &p) {
  const double L0 = 2.0 / std::sqrt(p.sigma()); // Delta(r1j + r2j)(0) = 2 Delta(R_j)
  return L0 * p.m1() / std::sqrt(momentum_sum_variance(p));
}

} // namespace bohm

#endif // BOHM_ENSEMBLE_HPP
