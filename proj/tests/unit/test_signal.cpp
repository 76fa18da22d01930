#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "wellposed/errors.hpp"
#include "wellposed/signal.hpp"

using namespace wellposed;

namespace {

Signal ramp(double t0, double dt, int count) {
  return Signal::sample(t0, dt, count, 1, [](double t) {
    Eigen::VectorXd v(1);
    v << t;
    return v;
  });
}

}  // namespace

TEST(ExpSegmentIntegral, Examples) {
  EXPECT_NEAR(exp_segment_integral(-1.0, 1.0, 0.0, 1.0, 0.0, 1.0).real(),
              std::exp(-1.0), 1e-15);
  EXPECT_EQ(exp_segment_integral(-1.0, 1.0, 0.0, 1.0, 0.0, 0.0), cplx(0.0));
  EXPECT_DOUBLE_EQ(exp_segment_integral(0.0, 7.0, 0.0, 1.0, 1.0, 1.0).real(), 1.0);
  EXPECT_THROW(exp_segment_integral(-1.0, 1.0, 1.0, 1.0, 0.0, 1.0), DomainError);
}

TEST(ExpSegmentIntegral, SmallArgumentsMatchSeries) {
  // Around the series / closed form switch at |z| = 0.5.
  for (double z : {0.49, 0.51, 1e-3, 1e-7, 1e-9}) {
    cplx a(-z, 0.3 * z);
    cplx v = exp_segment_integral(a, 1.0, 0.0, 1.0, 1.0, 2.0);
    // Reference by composite Simpson with many panels.
    const int n = 20000;
    cplx ref = 0.0;
    for (int i = 0; i <= n; ++i) {
      double r = static_cast<double>(i) / n;
      double w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
      ref += w * std::exp(a * (1.0 - r)) * (1.0 + r);
    }
    ref /= 3.0 * n;
    EXPECT_LE(std::abs(v - ref), 1e-12 * std::abs(ref)) << z;
  }
}

TEST(ExpSegmentIntegral, AdditiveUnderSplitting) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    cplx a(-5.0 * U(rng), 4.0 * U(rng) - 2.0);
    double r0 = U(rng), r1 = r0 + 0.1 + U(rng), T = r1 + U(rng);
    cplx u0(U(rng), U(rng)), u1(U(rng), -U(rng));
    cplx whole = exp_segment_integral(a, T, r0, r1, u0, u1);
    double m = r0 + U(rng) * (r1 - r0);
    cplx um = u0 + (u1 - u0) * (m - r0) / (r1 - r0);
    cplx parts = exp_segment_integral(a, T, r0, m, u0, um) +
                 exp_segment_integral(a, T, m, r1, um, u1);
    EXPECT_LE(std::abs(whole - parts), 1e-12 * std::abs(whole));
  }
}

TEST(Signal, InterpolatesAndVanishesOutside) {
  Signal s = ramp(1.0, 0.5, 3);  // 1, 1.5, 2
  EXPECT_DOUBLE_EQ(s.value(1.25, 0).real(), 1.25);
  EXPECT_DOUBLE_EQ(s.value(2.0, 0).real(), 2.0);
  EXPECT_EQ(s.value(0.99, 0), cplx(0.0));
  EXPECT_EQ(s.value(2.01, 0), cplx(0.0));
  EXPECT_THROW(Signal(0.0, 0.0, Eigen::MatrixXcd::Zero(1, 2)), DomainError);
  EXPECT_THROW(Signal(0.0, 1.0, Eigen::MatrixXcd::Zero(1, 0)), DimensionError);
}

TEST(LpNorm, Examples) {
  Signal one(0.0, 1.0, Eigen::MatrixXcd::Ones(1, 2));
  EXPECT_DOUBLE_EQ(lp_norm(one, 2.0), 1.0);
  EXPECT_NEAR(lp_norm(ramp(0.0, 1.0, 2), 2.0), 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_EQ(lp_norm(Signal::zeros(0.0, 0.1, 5, 2), 2.0), 0.0);
  EXPECT_THROW(lp_norm(one, 0.5), DomainError);
  // p = 1 of a ramp 0 -> 1: 1/2; p = 3: (1/4)^{1/3}.
  EXPECT_NEAR(lp_norm(ramp(0.0, 1.0, 2), 1.0), 0.5, 1e-12);
  EXPECT_NEAR(lp_norm(ramp(0.0, 1.0, 2), 3.0), std::cbrt(0.25), 1e-12);
}

TEST(LpNorm, HomogeneousAndShiftInvariant) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> N(0.0, 1.0);
  Eigen::MatrixXcd v(2, 40);
  for (int i = 0; i < 40; ++i) v.col(i) << cplx(N(rng), N(rng)), N(rng);
  Signal s(0.0, 0.05, v);
  for (double p : {1.0, 2.0, 3.5}) {
    double base = lp_norm(s, p);
    EXPECT_NEAR(lp_norm(s.scaled(cplx(-2.0, 1.0)), p), std::sqrt(5.0) * base,
                1e-12 * base);
    EXPECT_EQ(lp_norm(s.translated(0.35), p), base);
  }
}

TEST(ExpKernelIntegral, MatchesSegmentSum) {
  Signal s = ramp(0.0, 0.25, 5);  // r on [0, 1]
  auto v = exp_kernel_integral(-1.0, 1.0, 0.0, 1.0, s);
  EXPECT_NEAR(v[0].real(), std::exp(-1.0), 1e-15);
  // Partial range not on grid points: int_{0.1}^{0.6} e^{-(1-r)} r dr.
  auto w = exp_kernel_integral(-1.0, 1.0, 0.1, 0.6, s);
  auto F = [](double r) { return std::exp(r - 1.0) * (r - 1.0); };
  EXPECT_NEAR(w[0].real(), F(0.6) - F(0.1), 1e-15);
}

TEST(GridSteps, Validates) {
  EXPECT_EQ(grid_steps(1.0, 1e-3), 1000);
  EXPECT_EQ(grid_steps(0.0, 0.1), 0);
  EXPECT_THROW(grid_steps(0.15, 0.1), DomainError);
  EXPECT_THROW(grid_steps(-1.0, 0.1), DomainError);
}

TEST(SignalCsv, RoundTripsComplexSamples) {
  Eigen::MatrixXcd v(2, 3);
  v << cplx(1.0, 0.5), 0.1, 1.0 / 3.0, -2.0, cplx(0.0, -1e-17), 7.0;
  Signal s(-0.2, 0.1, v);
  std::stringstream ss;
  write_signal_csv(ss, s);
  Signal back = read_signal_csv(ss);
  EXPECT_EQ(back.size(), 3);
  EXPECT_EQ(back.samples(), v);
  EXPECT_NEAR(back.t0(), -0.2, 1e-15);
  EXPECT_NEAR(back.dt(), 0.1, 1e-15);
}

TEST(SignalCsv, RejectsMalformedInput) {
  std::stringstream bad_header("t,c0\n0,1\n");
  EXPECT_THROW(read_signal_csv(bad_header), SchemaError);
  std::stringstream ragged("time,c0\n0,1\n0.1\n");
  EXPECT_THROW(read_signal_csv(ragged), SchemaError);
  std::stringstream uneven("time,c0\n0,1\n0.1,1\n0.3,1\n");
  EXPECT_THROW(read_signal_csv(uneven), SchemaError);
  std::stringstream text("time,c0\n0,abc\n");
  EXPECT_THROW(read_signal_csv(text), SchemaError);
}
