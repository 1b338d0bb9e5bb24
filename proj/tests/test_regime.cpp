#include <gtest/gtest.h>

#include "bohm/regime.hpp"

using namespace bohm::regime;

TEST(Transition, SpdcExample) {
  const auto r = alignment_transition({2e-3, 351.1e-9});
  EXPECT_GT(r.R_meters, 71.5);
  EXPECT_LT(r.R_meters, 71.7);
  EXPECT_DOUBLE_EQ(r.R_meters, kSpeedOfLight * r.T_seconds);
}

TEST(Transition, Scaling) {
  const auto a = alignment_transition({1e-3, 500e-9});
  const auto b = alignment_transition({2e-3, 500e-9});
  EXPECT_NEAR(b.R_meters / a.R_meters, 4.0, 1e-14);
  EXPECT_LT(alignment_transition({1e-3, 600e-9}).R_meters, a.R_meters);
  const auto tiny = alignment_transition({1e-12, 500e-9});
  EXPECT_LT(tiny.R_meters, 1e-10);
  EXPECT_LT(tiny.T_seconds, 1e-18);
}

TEST(Transition, RejectsNonPositive) {
  EXPECT_THROW(alignment_transition({0, 1e-7}), bohm::DomainError);
  EXPECT_THROW(alignment_transition({1e-3, -1}), bohm::DomainError);
}

TEST(Asymptotes, CrossoverAndLimits) {
  const double L0 = 3, dp = 0.2, p = 5, m = 2;
  const auto a = angle_asymptotes(L0, dp, p, m, L0 * m / dp);
  EXPECT_NEAR(a.small_t, a.large_t, 1e-15);
  EXPECT_EQ(angle_asymptotes(L0, 0.0, p, m, 1.0).large_t, 0.0);
  EXPECT_THROW(angle_asymptotes(L0, dp, 0, m, 1), bohm::DomainError);
  EXPECT_THROW(angle_asymptotes(L0, dp, p, m, 0), bohm::DomainError);
}

TEST(Units, ParseLength) {
  EXPECT_DOUBLE_EQ(parse_length("2mm"), 2e-3);
  EXPECT_DOUBLE_EQ(parse_length(" 351.1nm "), 351.1e-9);
  EXPECT_DOUBLE_EQ(parse_length("3"), 3.0);
  EXPECT_DOUBLE_EQ(parse_length("1.5 km"), 1500.0);
  EXPECT_DOUBLE_EQ(parse_length("4um"), 4e-6);
  EXPECT_THROW(parse_length("2 furlongs"), bohm::DomainError);
  EXPECT_THROW(parse_length("mm"), bohm::DomainError);
}
