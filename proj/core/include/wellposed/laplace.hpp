#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "wellposed/signal.hpp"
#include "wellposed/spectral.hpp"
#include "wellposed/system.hpp"

namespace wellposed {

// Beyond the end of the grid the signal obeys ||s(t)|| <= K amplitude
// e^{omega t}.
struct TailDecay {
  double K = 1.0;
  double omega = -1.0;
  double amplitude = 0.0;
};

struct LaplaceResult {
  Eigen::VectorXcd value;
  // Bound on the norm of the part beyond the grid (0 without a tail).
  double tail_bound = 0.0;
  // Richardson estimate |L_h - L_2h| on the same span plus a rounding floor.
  double quadrature_budget = 0.0;
};

// int_0^T e^{-lambda r} s(r) dr for the interpolant of s, exact per segment.
// Without a tail the signal is taken to vanish beyond its grid. Throws
// DomainError when a tail is declared and Re(lambda) <= max(0, omega).
LaplaceResult laplace_transform(const Signal& s, cplx lambda,
                                const std::optional<TailDecay>& tail = {});

struct EntryResidual {
  double residual = 0.0;
  double quadrature_budget = 0.0;
  double tail_budget = 0.0;
  double budget = 0.0;
  bool pass = false;
};

struct ResolventResidualReport {
  cplx lambda;
  EntryResidual r12;  // observation entry, worst over the sampled s
  EntryResidual r23;  // control entry
  EntryResidual r13;  // input-output entry
  bool pass = false;
};

struct VerifyOptions {
  double horizon = 40.0;
  double dt = 1e-3;
  std::vector<double> s_samples{0.0, -0.5, -1.0};
  // r13 through the twice-integrated formula; needs u(0) = u'(0) = 0.
  bool smooth_path = true;
};

// Laplace transforms of simulated trajectories against the closed-form
// resolvent entries at lambda:
//   r12: e^{lambda s} c R(lambda, A) x
//   r23: R(lambda, A_{-1}) B u^(lambda)
//   r13: C R(lambda, A_{-1}) B u^(lambda) + D u^(lambda)
ResolventResidualReport verify_resolvent_entries(const SpectralSystem& sys,
                                                 cplx lambda,
                                                 const SpectralVector& x,
                                                 const Signal& u,
                                                 const VerifyOptions& opts = {});

}  // namespace wellposed
