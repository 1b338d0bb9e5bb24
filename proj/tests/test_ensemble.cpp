#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bohm/ensemble.hpp"
#include "bohm/regime.hpp"
#include "bohm/trajectories.hpp"
#include "oracles.hpp"

using namespace bohm;

namespace {
const DecayParams kParams(1, 1, 1, 1);
}

TEST(Sample, CollectiveMeanIsZero) {
  const EnsembleSpec spec{100000, 1, DecayParams(1, 2, 0.5, 0.7)};
  const auto s = sample_equilibrium(spec);
  const auto m = summarize(s, [&](const PairState &x) { return collective_coordinate(spec.params, x).y; });
  EXPECT_LT(std::abs(m.mean), 4 * m.mean_se);
}

TEST(Sample, RelativeVarianceIsAlpha) {
  const EnsembleSpec spec{100000, 2, DecayParams(1, 2, 0.5, 0.7)};
  const auto s = sample_equilibrium(spec);
  for (int k = 0; k < 3; ++k) {
    const auto m = summarize(s, [&](const PairState &x) { return (x.r1 - x.r2)[k]; });
    EXPECT_LT(std::abs(m.variance - 0.5), 4 * m.variance_se);
  }
}

TEST(Sample, Deterministic) {
  const EnsembleSpec spec{1000, 99, kParams};
  const auto a = sample_equilibrium(spec), b = sample_equilibrium(spec);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].r1, b[i].r1);
    EXPECT_EQ(a[i].r2, b[i].r2);
  }
  const auto c = sample_equilibrium({1000, 100, kParams});
  EXPECT_NE(a[0].r1, c[0].r1);
}

TEST(Sample, RejectsLimitWave) {
  EXPECT_THROW(sample_equilibrium({10, 1, DecayParams(1, 1, 1, 0)}), UnsupportedVariantError);
  EXPECT_THROW(sample_equilibrium({0, 1, kParams}), DomainError);
}

TEST(Moments, GaussianValuesAgreeWithQuadrature) {
  // |F|^2 in P is exp(-2 P^2 / sigma); in R the t = 0 density is exp(-sigma R^2 / 2).
  for (double sigma : {0.3, 1.0, 5.0}) {
    const DecayParams p(1, 2, 1, sigma);
    const double varP = oracle::second_moment([&](double P) { return std::exp(-2 * P * P / sigma); }, 12 * std::sqrt(sigma));
    EXPECT_NEAR(momentum_sum_variance(p), varP, 1e-10 * varP);
    const double M = p.total_mass();
    const double varR = oracle::second_moment([&](double R) { return std::exp(-sigma * R * R / 2); }, 12 / std::sqrt(sigma));
    EXPECT_NEAR(collective_variance_at_zero(p), M * M * varR, 1e-9 * M * M * varR);
  }
}

TEST(Propagation, MatchesRk4OnSpotChecks) {
  const DecayParams p(1, 2, 0.6, 0.9);
  const auto states = sample_equilibrium({100, 5, p});
  const PairWave w(p);
  for (const auto &s : states) {
    const auto tr = integrate_pair(w, s, 4.0, 1e-3, 4000);
    const auto q = propagate(p, s, 4.0);
    EXPECT_LT(norm(tr.states.back().r1 - q.r1), 1e-8 * std::max(1.0, norm(q.r1)));
    EXPECT_LT(norm(tr.states.back().r2 - q.r2), 1e-8 * std::max(1.0, norm(q.r2)));
  }
}

TEST(CollectiveVariance, AtZeroAndLater) {
  const EnsembleSpec spec{100000, 3, kParams};
  for (double t : {0.0, 1.0, 10.0, 100.0}) {
    const auto r = collective_variance(spec, t);
    EXPECT_LT(std::abs(r.empirical - r.analytic), 3 * r.std_error) << "t=" << t;
    EXPECT_DOUBLE_EQ(r.analytic - collective_variance_analytic(kParams, 0), kParams.sigma() / 4 * t * t);
  }
}

TEST(CollectiveVariance, ExactlyQuadratic) {
  const DecayParams p(1, 3, 1, 0.4);
  auto f = [&](double t) { return collective_variance_analytic(p, t); };
  // parabola through t = 0, 1, 2 predicts t = 7
  const double a = f(0), b = (-3 * f(0) + 4 * f(1) - f(2)) / 2, c = (f(0) - 2 * f(1) + f(2)) / 2;
  EXPECT_LT(std::abs(a + b * 7 + c * 49 - f(7)) / f(7), 1e-12);
}

TEST(Heisenberg, AnalyticIsOne) {
  for (double sigma : {0.01, 1.0, 30.0})
    for (double alpha : {0.1, 2.0}) {
      const auto r = heisenberg_product({1000, 1, DecayParams(1, 2.5, alpha, sigma)});
      EXPECT_NEAR(r.analytic_ratio, 1.0, 1e-9);
      EXPECT_GE(r.analytic_ratio, 1.0 - 1e-9);
    }
}

TEST(Heisenberg, MonteCarlo) {
  const auto r = heisenberg_product({100000, 8, DecayParams(1, 2, 0.5, 2)});
  EXPECT_LT(std::abs(r.mc_ratio - 1.0), 3 * r.mc_std_error);
}

TEST(Cones, FullSphere) {
  const auto r = cone_probability_check({1000, 1, kParams}, {{0, 0, 1}, std::numbers::pi}, 1.0);
  EXPECT_EQ(r.position_fraction, 1.0);
  EXPECT_EQ(r.momentum_fraction, 1.0);
}

TEST(Cones, MomentumSolidAngle) {
  const double th = std::numbers::pi / 5;
  const auto r = cone_probability_check({100000, 4, kParams}, {{1, 1, 0}, th}, 1.0);
  const double want = (1 - std::cos(th)) / 2;
  EXPECT_LT(std::abs(r.momentum_fraction - want), 3 * std::sqrt(want * (1 - want) / 1e5));
}

TEST(Cones, LargeTimePositionsMatchMomenta) {
  const DecayParams p(1, 1, 1, 1);
  const double t = 100 * 2 * p.mu() * p.alpha();
  const auto r = cone_probability_check({100000, 6, p}, {{0, 0, 1}, std::numbers::pi / 4}, t);
  EXPECT_LT(std::abs(r.position_fraction - r.momentum_fraction), 3 * r.std_error);
}

TEST(Cones, RejectsBadInput) {
  EXPECT_THROW(cone_probability_check({10, 1, kParams}, {{0, 0, 1}, 0.5}, 0.0), DomainError);
  EXPECT_THROW(cone_probability_check({10, 1, kParams}, {{0, 0, 1}, 0.0}, 1.0), DomainError);
}

TEST(Angular, Asymptotes) {
  const DecayParams p(1, 1, 1, 0.01);
  const double tc = crossover_time(p);
  const auto late = angular_deviation({100000, 2, p}, 200 * tc);
  EXPECT_NEAR(late.tan_theta_estimate / late.large_t_asymptote, 1.0, 0.05);
  const auto early = angular_deviation({100000, 2, p}, tc / 200);
  EXPECT_NEAR(early.tan_theta_estimate / early.small_t_asymptote, 1.0, 0.05);
}

TEST(Angular, CrossoverEqualsAsymptoteIntersection) {
  const DecayParams p(2, 2, 1, 0.5);
  const double tc = crossover_time(p);
  const double L0 = 2 / std::sqrt(p.sigma()), dp = std::sqrt(p.sigma() / 4);
  const auto a = regime::angle_asymptotes(L0, dp, 1.0, p.m1(), tc);
  EXPECT_NEAR(a.small_t, a.large_t, 1e-14);
}

TEST(Angular, RejectsBadInput) {
  EXPECT_THROW(angular_deviation({10, 1, kParams}, 0.0), DomainError);
  EXPECT_THROW(angular_deviation({10, 1, DecayParams(1, 2, 1, 1)}, 1.0), DomainError);
}

TEST(Angular, MatchesRegimeAsymptotesAtTenCrossovers) {
  const DecayParams p(1, 1, 1, 0.05);
  const double t = 10 * crossover_time(p);
  const auto r = angular_deviation({100000, 12, p}, t);
  const double L0 = 2 / std::sqrt(p.sigma()), dp = std::sqrt(p.sigma() / 4);
  const double pbar = r.large_t_asymptote > 0 ? dp / r.large_t_asymptote : 1.0;
  const auto a = regime::angle_asymptotes(L0, dp, pbar, p.m1(), t);
  EXPECT_NEAR(a.large_t / r.tan_theta_estimate, 1.0, 0.1);
}

TEST(StandardQuantumLimit, HoldsAtAllTimes) {
  const double m = 1;
  for (double t : {0.1, 1.0, 10.0, 100.0}) {
    // minimum-uncertainty choice for this t: sigma = 2M / t
    const DecayParams p(m, m, 1, 4 * m / t);
    const double var_sum = 4 * (1 / p.sigma() + p.sigma() * t * t / (4 * p.total_mass() * p.total_mass()));
    EXPECT_GE(var_sum, 2 * t / m * (1 - 1e-12));
    const auto states = propagate_all(p, sample_equilibrium({100000, 9, p}), t);
    const auto s = summarize(states, [](const PairState &x) { return x.r1.x + x.r2.x; });
    EXPECT_LT(std::abs(s.variance - var_sum), 3 * s.variance_se);
  }
}

TEST(MomentumSum, StationaryAcrossTimes) {
  const EnsembleSpec spec{50000, 4, kParams};
  const auto a = sample_momenta(spec), b = sample_momenta(spec);
  const auto sa = summarize(a, [](const MomentumPair &m) { return m.p1.x + m.p2.x; });
  const auto sb = summarize(b, [](const MomentumPair &m) { return m.p1.x + m.p2.x; });
  EXPECT_EQ(sa.variance, sb.variance);
  EXPECT_LT(std::abs(sa.variance - 0.25), 3 * sa.variance_se);
}
