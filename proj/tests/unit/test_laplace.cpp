#include <cmath>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "wellposed/certificate.hpp"
#include "wellposed/errors.hpp"
#include "wellposed/heat.hpp"
#include "wellposed/laplace.hpp"

using namespace wellposed;
using wellposed::testing::one_mode;

namespace {

Signal exp_decay(double dt, double end) {
  return Signal::sample(0.0, dt, grid_steps(end, dt) + 1, 1, [](double r) {
    Eigen::VectorXd v(1);
    v << std::exp(-r);
    return v;
  });
}

Signal unit_step(double dt) {
  return Signal(0.0, dt, Eigen::MatrixXcd::Ones(1, grid_steps(1.0, dt) + 1));
}

}  // namespace

TEST(LaplaceTransform, Examples) {
  LaplaceResult r = laplace_transform(exp_decay(1e-3, 40.0), 1.0, TailDecay{1.0, -1.0, 1.0});
  EXPECT_NEAR(r.value[0].real(), 0.5, 2e-7);
  EXPECT_LE(std::abs(r.value[0] - 0.5), r.quadrature_budget + r.tail_bound);

  LaplaceResult z = laplace_transform(Signal::zeros(0.0, 0.1, 11, 2), 1.0);
  EXPECT_EQ(z.value.norm(), 0.0);
  EXPECT_EQ(z.tail_bound, 0.0);

  LaplaceResult s = laplace_transform(unit_step(1e-2), 1.0);
  EXPECT_NEAR(s.value[0].real(), 1.0 - std::exp(-1.0), 1e-14);
  EXPECT_NEAR(s.value[0].real(), 0.63212, 1e-5);
}

TEST(LaplaceTransform, DomainErrors) {
  EXPECT_THROW(laplace_transform(exp_decay(1e-2, 1.0), cplx(0.0, 1.0), TailDecay{}),
               DomainError);
  // Compact support needs no decay.
  EXPECT_NO_THROW(laplace_transform(unit_step(1e-2), cplx(-1.0, 0.0)));
}

TEST(LaplaceTransform, TailHonesty) {
  for (cplx lambda : {cplx(1.0, 0.0), cplx(0.5, 2.0)}) {
    TailDecay decay{1.0, -1.0, 1.0};
    LaplaceResult a = laplace_transform(exp_decay(1e-2, 5.0), lambda, decay);
    LaplaceResult b = laplace_transform(exp_decay(1e-2, 10.0), lambda, decay);
    EXPECT_LE((a.value - b.value).norm(), a.tail_bound + b.quadrature_budget);
  }
}

TEST(VerifyResolvent, OneModeExamples) {
  SpectralSystem sys = one_mode();
  VerifyOptions opts;
  opts.s_samples = {0.0};
  Signal u = unit_step(1e-3);
  opts.smooth_path = false;
  ResolventResidualReport r =
      verify_resolvent_entries(sys, 1.0, SpectralVector::Ones(1), u, opts);
  EXPECT_LE(r.r12.residual, 1e-5);
  EXPECT_LE(r.r23.residual, 1e-5);
  EXPECT_TRUE(r.pass);

  ResolventResidualReport z = verify_resolvent_entries(
      sys, 1.0, SpectralVector::Ones(1), Signal::zeros(0.0, 1e-3, 11, 1), opts);
  EXPECT_EQ(z.r23.residual, 0.0);
  EXPECT_EQ(z.r13.residual, 0.0);
}

TEST(VerifyResolvent, SmoothPathPrecondition) {
  VerifyOptions opts;
  EXPECT_THROW(verify_resolvent_entries(one_mode(), 1.0, SpectralVector::Ones(1),
                                        unit_step(1e-3), opts),
               PreconditionError);
}

TEST(VerifyResolvent, SelfConvergence) {
  heat::HeatConfig cfg;
  cfg.modes = 8;
  SpectralSystem sys = heat::build_heat_system(cfg);
  SpectralVector x = default_probe_state(sys);
  double prev12 = 0.0, prev23 = 0.0, prev13 = 0.0;
  for (double dt : {4e-3, 2e-3, 1e-3}) {
    VerifyOptions opts;
    opts.dt = dt;
    opts.horizon = 20.0;
    ResolventResidualReport r = verify_resolvent_entries(
        sys, cplx(1.0, 1.0), x, default_probe_input(sys, dt), opts);
    EXPECT_TRUE(r.pass);
    if (prev12 > 0.0) {
      EXPECT_GE(prev12 / r.r12.residual, 3.5);
      EXPECT_GE(prev23 / r.r23.residual, 3.5);
      EXPECT_GE(prev13 / r.r13.residual, 3.5);
    }
    prev12 = r.r12.residual;
    prev23 = r.r23.residual;
    prev13 = r.r13.residual;
  }
}
