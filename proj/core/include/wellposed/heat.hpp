#pragma once

#include <span>
#include <vector>

#include "wellposed/certificate.hpp"
#include "wellposed/spectral.hpp"
#include "wellposed/system.hpp"

// Heat equation on [0, pi] with Neumann boundary control at both ends and
// point observation at pi/2, in the cosine basis
// e_n(s) = sqrt(eps_n/pi) cos(n s), eps_0 = 1, eps_n = 2 otherwise.
namespace wellposed::heat {

struct HeatConfig {
  long modes = 64;
  double shift = 1.0;
  double gamma_max = 100.0;
  long gamma_steps = 4001;
  double t0 = 1.0;
};

// alpha_n = -shift - n^2, b_n = (-sqrt(eps_n/pi), (-1)^n sqrt(eps_n/pi)),
// c_n = e_n(pi/2), D = 0, K = 1, omega = -shift. The tail majorant is
// 4/((1 + n^2) pi) per channel (offset min(1, shift) below shift 1).
SpectralSystem build_heat_system(const HeatConfig& cfg);

double eigenfunction(long n, double s);

struct DirichletValues {
  cplx q0;
  cplx q1;
};

// Kernels of the Dirichlet operator Q_lambda for the Neumann boundary
// operator f -> (f'(0), f'(pi)). Throws SpectrumError when lambda = -n^2.
// `negate_root` evaluates with -sqrt(lambda); the result is the same.
DirichletValues dirichlet_eval(cplx lambda, double s, bool negate_root = false);

// x(s) = sum_n x_n e_n(s) (real part).
std::vector<double> reconstruct_temperature(const SpectralVector& x,
                                            std::span<const double> s_grid);

// Stated (not rigorous) estimate of what the neglected modes add to the
// observation constant and to the squared control constant per channel:
// (1/pi) sum_{n >= N} 1/(shift + n^2).
double admissibility_tail_estimate(const HeatConfig& cfg);

// Certificate for the built-in system. `opts` supplies the numerical
// settings not carried by the config (probes, dt, Laplace horizon).
Certificate heat_certificate(const HeatConfig& cfg, CertifyOptions opts = {});

}  // namespace wellposed::heat
