#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bohm/wavecore.hpp"
#include "oracles.hpp"

using namespace bohm;

TEST(ReducedMass, Values) {
  EXPECT_DOUBLE_EQ(reduced_mass(1, 1), 0.5);
  EXPECT_DOUBLE_EQ(reduced_mass(2, 2), 1.0);
  EXPECT_DOUBLE_EQ(reduced_mass(1, 3), 0.75);
  EXPECT_THROW(reduced_mass(0, 1), DomainError);
  EXPECT_THROW(reduced_mass(1, -2), DomainError);
}

TEST(DecayParams, Invariants) {
  const DecayParams p(1.3, 2.7, 0.4, 0.0);
  EXPECT_NEAR(1.0 / p.mu(), 1.0 / p.m1() + 1.0 / p.m2(), 1e-15);
  EXPECT_TRUE(p.is_limit());
  EXPECT_THROW(DecayParams(1, 1, 0, 1), DomainError);
  EXPECT_THROW(DecayParams(1, 1, 1, -1), DomainError);
}

TEST(LimitWave, PeakAtCoincidence) {
  const PairWave w(DecayParams(1, 1, 1, 0));
  const auto a = eval_pair_wave(w, {{0.3, 0.1, 2}, {0.3, 0.1, 2}, 0});
  EXPECT_NEAR(std::abs(a), std::pow(std::numbers::pi, 1.5), 1e-12);
  for (double d : {0.1, 0.5, 2.0})
    EXPECT_LT(std::abs(eval_pair_wave(w, {{d, 0, 0}, {0, 0, 0}, 0})), std::abs(a));
}

TEST(LimitWave, DensityRatioAtTwoAlpha) {
  const double alpha = 0.7;
  const PairWave w(DecayParams(1, 2, alpha, 0));
  const double d = std::sqrt(2.0 * alpha);
  const double ratio = w.density({{d, 0, 0}, {0, 0, 0}, 0}) / w.density({{0, 0, 0}, {0, 0, 0}, 0});
  EXPECT_NEAR(ratio, std::exp(-1.0), 1e-14);
}

TEST(LimitWave, DependsOnlyOnSeparation) {
  const PairWave w(DecayParams(1, 3, 0.5, 0));
  const auto a = eval_pair_wave(w, {{1, 2, 3}, {0.5, 2, 3}, 1.7});
  const auto b = eval_pair_wave(w, {{-4, 7, 1}, {-4.5, 7, 1}, 1.7});
  EXPECT_NEAR(std::abs(a - b), 0.0, 1e-14);
}

TEST(LimitWave, MatchesDefiningFormula) {
  const DecayParams p(1, 3, 0.5, 0);
  const PairWave w(p);
  const PairState s{{0.2, -0.4, 1}, {-0.3, 0.1, 0.5}, 2.3};
  EXPECT_NEAR(std::abs(eval_pair_wave(w, s) - oracle::limit_wave(p, s)), 0.0, 1e-13);
}

TEST(LimitWave, LogDensityLinearInSquaredSeparation) {
  const double alpha = 0.37;
  const PairWave w(DecayParams(1, 1, alpha, 0));
  // least-squares line through (d^2, log density)
  std::vector<double> xs, ys;
  for (int i = 0; i < 20; ++i) {
    const double d = 0.15 * i;
    xs.push_back(d * d);
    ys.push_back(w.log_density({{d, 0, 0}, {0, 0, 0}, 0}));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = xs.size();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double icpt = (sy - slope * sx) / n;
  EXPECT_NEAR(slope, -1.0 / (2.0 * alpha), 1e-9);
  for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_NEAR(ys[i], icpt + slope * xs[i], 1e-9);
}

TEST(RegularizedWave, MatchesMomentumQuadrature) {
  const DecayParams p(1, 2, 0.8, 1.5);
  const PairWave w(p);
  for (const PairState &s : {PairState{{0.3, -0.2, 0.1}, {-0.4, 0.5, 0.0}, 0.0},
                             PairState{{0.3, -0.2, 0.1}, {-0.4, 0.5, 0.0}, 0.9},
                             PairState{{1.1, 0.2, -0.7}, {0.6, -0.3, 0.2}, 2.5}}) {
    const auto ref = oracle::pair_wave(p, s);
    const auto got = eval_pair_wave(w, s);
    EXPECT_LT(std::abs(got - ref) / std::abs(ref), 1e-8) << "t=" << s.t;
  }
}

TEST(RegularizedWave, CollectiveWidthScalesWithSigma) {
  // At fixed separation the amplitude is Gaussian in R = (m1 r1 + m2 r2)/M
  // with |psi|^2 variance 1/sigma per component at t = 0.
  for (double sigma : {0.25, 1.0, 4.0}) {
    const DecayParams p(1, 1, 1, sigma);
    const PairWave w(p);
    const Vec3 sep{0.3, 0, 0};
    auto at = [&](double R) { return w.density({Vec3{R, 0, 0} + 0.5 * sep, Vec3{R, 0, 0} - 0.5 * sep, 0}); };
    const double var = oracle::second_moment(at, 12.0 / std::sqrt(sigma));
    EXPECT_NEAR(var, 1.0 / sigma, 1e-8 / sigma);
  }
}

TEST(RegularizedWave, ConvergesToLimitTimesCmFactor) {
  // psi_sigma / psi_limit is the centre-of-mass factor; for fixed R its shape
  // (ratio to R = 0) tends to 1 as sigma -> 0.
  const Vec3 sep{0.4, -0.1, 0.2};
  const PairState s{Vec3{0.25, 0.2, -0.25} + 0.5 * sep, Vec3{0.25, 0.2, -0.25} - 0.5 * sep, 0.8};
  const PairState s0{0.5 * sep, -0.5 * sep, 0.8};
  double prev = INFINITY;
  for (double sigma : {1.0, 0.1, 0.01}) {
    const PairWave reg(DecayParams(1, 1, 1, sigma));
    const PairWave lim(DecayParams(1, 1, 1, 0));
    const auto shape = (eval_pair_wave(reg, s) / eval_pair_wave(lim, s)) /
                       (eval_pair_wave(reg, s0) / eval_pair_wave(lim, s0));
    const double err = std::abs(shape - 1.0);
    EXPECT_LT(err, prev);
    prev = err;
  }
  EXPECT_LT(prev, 1e-3);
}

TEST(PairVelocity, ZeroAtTimeZeroForLimit) {
  const PairWave w(DecayParams(1, 2, 1, 0));
  const auto v = pair_velocity(w, {{0.3, 1, 2}, {-1, 0.2, 0}, 0});
  EXPECT_EQ(norm(v.v1), 0.0);
  EXPECT_EQ(norm(v.v2), 0.0);
}

TEST(PairVelocity, WorkedExample) {
  const PairWave w(DecayParams(1, 1, 1, 0));
  const auto v = pair_velocity(w, {{1, 0, 0}, {0, 0, 0}, 1});
  EXPECT_NEAR(v.v1.x, 0.25, 1e-14);
  EXPECT_NEAR(v.v2.x, -0.25, 1e-14);
  EXPECT_NEAR(v.v1.y, 0.0, 1e-15);
}

TEST(PairVelocity, AgreesWithFiniteDifferences) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.5, 1.5), tt(0.05, 4.0), mm(0.5, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const bool limit = i % 2 == 0;
    const DecayParams p(mm(rng), mm(rng), 0.5 + 0.5 * std::abs(u(rng)), limit ? 0.0 : 0.3 + std::abs(u(rng)));
    const PairWave w(p);
    const PairState s{{u(rng), u(rng), u(rng)}, {u(rng), u(rng), u(rng)}, tt(rng)};
    const auto v = pair_velocity(w, s);
    const auto ref = oracle::fd_velocity([&](const PairState &x) { return eval_pair_wave(w, x); }, p, s);
    const double scale = std::max({norm(ref.v1), norm(ref.v2), 1e-3});
    EXPECT_LT(norm(v.v1 - ref.v1) / scale, 1e-6);
    EXPECT_LT(norm(v.v2 - ref.v2) / scale, 1e-6);
  }
}

TEST(PairVelocity, OppositeMomentaForLimit) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3, 3), mm(0.2, 5.0);
  for (int i = 0; i < 1000; ++i) {
    const DecayParams p(mm(rng), mm(rng), mm(rng), 0.0);
    const PairWave w(p);
    const auto v = pair_velocity(w, {{u(rng), u(rng), u(rng)}, {u(rng), u(rng), u(rng)}, std::abs(u(rng)) * 3});
    EXPECT_LT(norm(p.m1() * v.v1 + p.m2() * v.v2), 1e-12);
  }
}

TEST(PairVelocity, NodeBelowDensityFloor) {
  const PairWave w(DecayParams(1, 1, 1e-3, 0));
  EXPECT_THROW(pair_velocity(w, {{100, 0, 0}, {0, 0, 0}, 0.01}), NodeError);
}

TEST(DensityPeak, LimitIsDegenerate) {
  const PairWave w(DecayParams(1, 1, 1, 0));
  const auto r = density_peak_check(w, 3.0, {});
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(r.deviation, 0.0);
}

TEST(DensityPeak, RegularizedPeakAtZeroAndWidens) {
  const DecayParams p(1, 2, 1, 1);
  const PairWave w(p);
  const auto r0 = density_peak_check(w, 0.0, {40, 41, {0.7, 0.2, 0}});
  const auto r10 = density_peak_check(w, 10.0, {40, 41, {0.7, 0.2, 0}});
  EXPECT_FALSE(r0.degenerate);
  EXPECT_LE(r0.deviation, r0.cell);
  EXPECT_LE(r10.deviation, r10.cell);
  // width of M R: M sqrt(1/sigma + sigma t^2 / 4M^2)
  const double M = p.total_mass();
  EXPECT_NEAR(r0.collective_std, M / std::sqrt(p.sigma()), 0.02 * M);
  const double want10 = M * std::sqrt(1.0 / p.sigma() + p.sigma() * 100.0 / (4 * M * M));
  EXPECT_NEAR(r10.collective_std, want10, 0.02 * want10);
  EXPECT_GT(r10.collective_std, r0.collective_std);
}

TEST(DensityPeak, EmptyGridRejected) {
  const PairWave w(DecayParams(1, 1, 1, 1));
  EXPECT_THROW(density_peak_check(w, 0.0, {10, 0, {}}), DomainError);
}
