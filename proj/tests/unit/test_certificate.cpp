#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "wellposed/certificate.hpp"
#include "wellposed/errors.hpp"
#include "wellposed/heat.hpp"

using namespace wellposed;
using wellposed::testing::one_mode;
using wellposed::testing::rel;

namespace {

heat::HeatConfig heat_cfg(long modes, double shift = 1.0) {
  heat::HeatConfig cfg;
  cfg.modes = modes;
  cfg.shift = shift;
  return cfg;
}

}  // namespace

TEST(Certificate, HeatIsWellPosed) {
  Certificate c = heat::heat_certificate(heat_cfg(64));
  EXPECT_EQ(c.verdict, Verdict::WellPosed);
  EXPECT_TRUE(c.failures.empty());
  ASSERT_TRUE(c.multiplier);
  double series = 4.0 * std::sqrt(2.0) / std::numbers::pi *
                  (1.0 + std::numbers::pi / std::tanh(std::numbers::pi)) / 2.0;
  EXPECT_LE(c.multiplier->upper_bound, series);
  ASSERT_TRUE(c.admissibility);
  EXPECT_GE(c.admissibility->globals.M_C, c.admissibility->M_obs);
  EXPECT_GE(c.admissibility->globals.M_B, c.admissibility->M_ctl);
  EXPECT_TRUE(c.admissibility->tail_estimate.has_value());
  for (const auto& r : c.residuals) EXPECT_TRUE(r.pass);
}

TEST(Certificate, SingleModeHeat) {
  EXPECT_EQ(heat::heat_certificate(heat_cfg(1)).verdict, Verdict::WellPosed);
}

TEST(Certificate, TamperedObservationIsNotCertified) {
  SpectralSystem h = heat::build_heat_system(heat_cfg(32));
  Eigen::MatrixXcd c(1, 32);
  for (Eigen::Index n = 0; n < 32; ++n) c(0, n) = 1.0 + static_cast<double>(n);
  Certificate cert = certify(h.with_observation(c), {}, "tampered");
  EXPECT_EQ(cert.verdict, Verdict::NotCertified);
  EXPECT_FALSE(cert.failures.empty());
  EXPECT_NE(cert.failures.front().find("compatibility"), std::string::npos);
}

TEST(Certificate, DivergentTailIsNotCertified) {
  Eigen::VectorXcd a(8);
  for (int n = 0; n < 8; ++n) a[n] = -(1.0 + n);
  SpectralSystem s(DiagonalGenerator::from_shifted(a), Eigen::MatrixXcd::Ones(8, 1),
                   Eigen::MatrixXcd::Ones(1, 8), Eigen::MatrixXcd::Zero(1, 1),
                   TailMajorant::power_law(1.0, 1.0), false);
  Certificate cert = certify(s, {}, "divergent");
  EXPECT_EQ(cert.verdict, Verdict::NotCertified);
  EXPECT_TRUE(std::isinf(cert.compat_uniform.tail_bound));
  EXPECT_FALSE(cert.multiplier.has_value());
}

TEST(Certificate, PreconditionsAndExploratory) {
  EXPECT_THROW(certify(one_mode().with_tail(std::nullopt, false), {}, ""),
               CertificateIncompleteError);
  CertifyOptions p3;
  p3.p = 3.0;
  EXPECT_THROW(certify(one_mode(), p3, ""), DomainError);
  p3.exploratory = true;
  Certificate c = certify(one_mode(), p3, "");
  EXPECT_EQ(c.verdict, Verdict::Exploratory);
  EXPECT_NE(certificate_to_json(c).find("\"verdict\": null"), std::string::npos);
}

TEST(Certificate, RescalingKeepsVerdict) {
  EXPECT_EQ(heat::heat_certificate(heat_cfg(32, 1.0)).verdict, Verdict::WellPosed);
  EXPECT_EQ(heat::heat_certificate(heat_cfg(32, 2.0)).verdict, Verdict::WellPosed);
}

TEST(Certificate, StableUnderTruncation) {
  Certificate a = heat::heat_certificate(heat_cfg(64));
  Certificate b = heat::heat_certificate(heat_cfg(128));
  EXPECT_EQ(a.verdict, b.verdict);
  EXPECT_LE(rel(a.admissibility->M_obs, b.admissibility->M_obs), 0.01);
  EXPECT_LE(rel(a.admissibility->M_ctl, b.admissibility->M_ctl), 0.01);
  EXPECT_LE(rel(a.multiplier->upper_bound, b.multiplier->upper_bound), 0.01);
  EXPECT_LE(rel(a.multiplier->grid_sup, b.multiplier->grid_sup), 0.01);
  EXPECT_LE(rel(a.admissibility->globals.M_BC, b.admissibility->globals.M_BC), 0.01);
}

TEST(Certificate, JsonIsDeterministic) {
  heat::HeatConfig cfg = heat_cfg(16);
  CertifyOptions one_worker;
  one_worker.workers = 1;
  std::string a = certificate_to_json(heat::heat_certificate(cfg));
  std::string b = certificate_to_json(heat::heat_certificate(cfg, one_worker));
  EXPECT_EQ(a, b);
  EXPECT_NE(a.find("\"verdict\": \"WELL_POSED\""), std::string::npos);
  EXPECT_NE(a.find("toleranceLedger"), std::string::npos);
}

TEST(Certificate, DigestFollowsContent) {
  EXPECT_EQ(content_digest(""), "cbf29ce484222325");
  EXPECT_EQ(content_digest("a"), "af63dc4c8601ec8c");
  EXPECT_NE(heat::heat_certificate(heat_cfg(8)).system_digest,
            heat::heat_certificate(heat_cfg(9)).system_digest);
}
