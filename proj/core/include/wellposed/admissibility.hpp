#pragma once

#include <optional>

#include <Eigen/Dense>

#include "wellposed/spectral.hpp"
#include "wellposed/system.hpp"

namespace wellposed {

struct GramResult {
  Eigen::MatrixXcd gram;  // N x N, Hermitian positive semidefinite
  double constant = 0.0;
};

// Gram_mn = (C^* C)_mn (e^{(conj(a_m) + a_n) t0} - 1) / (conj(a_m) + a_n).
// constant = largest eigenvalue, the sharp M in
//   int_0^t0 ||C T(s) x||^2 ds <= M ||x||^2.
GramResult observation_gram(const SpectralSystem& sys, double t0,
                            unsigned workers = 0);

// Gram_mn = (B B^*)_mn (e^{(a_m + conj(a_n)) t0} - 1) / (a_m + conj(a_n)).
// constant = sqrt of the largest eigenvalue, the norm of
// u -> int_0^t0 T(t0 - r) B u(r) dr on L^2.
GramResult control_gram(const SpectralSystem& sys, double t0,
                        unsigned workers = 0);

// Norm of the input-output map lies in [lower, upper]; upper is what the
// certificate uses.
struct PairInterval {
  double lower = 0.0;
  double upper = 0.0;
};

// Throws PreconditionError when no scan is available.
PairInterval pair_constant(const std::optional<MultiplierReport>& scan);

struct GlobalConstants {
  double M_C = 0.0;
  double M_B = 0.0;
  // Norm form with t0 normalised to 1: M_pair + M_C^{1/p} M_B K / (1 - e^omega).
  double M_BC = 0.0;
  double M_BC_power = 0.0;  // M_BC^p
};

// M_C = M_obs + M_obs K^p / (1 - e^{p omega t0})
// M_B = M_ctl K + M_ctl K / (1 - e^{omega t0})
// Throws StabilityError for omega >= 0, DomainError for K < 1, p < 1 or
// t0 <= 0.
GlobalConstants global_constants(double M_obs, double M_ctl, double M_pair,
                                 const StabilityBound& bound, double p,
                                 double t0);

struct AdmissibilityReport {
  double t0 = 1.0;
  double p = 2.0;
  double M_obs = 0.0;
  double M_ctl = 0.0;
  PairInterval M_pair;
  GlobalConstants globals;
  StabilityBound bound;
  // Stated estimate of what the neglected modes add (not rigorous).
  std::optional<double> tail_estimate;
};

AdmissibilityReport admissibility_report(const SpectralSystem& sys, double t0,
                                         const MultiplierReport& scan,
                                         unsigned workers = 0);

}  // namespace wellposed
