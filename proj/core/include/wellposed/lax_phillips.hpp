#pragma once

#include <Eigen/Dense>

#include "wellposed/signal.hpp"
#include "wellposed/spectral.hpp"
#include "wellposed/system.hpp"

namespace wellposed {

/// Element of the extended state space: (past output, state, future input).
///
/// `past_output` lives on [-T_w, 0] and `future_input` on [0, T_f], both
/// on the same step dt. T_w is the caller's window; stepping never drops
/// nonzero history silently.
struct ExtendedState {
  Signal past_output;
  SpectralVector state;
  Signal future_input;
};

// Extended state with zero history on [-window, 0] and the given input.
ExtendedState make_extended_state(const SpectralSystem& sys, double window,
                                  SpectralVector state, Signal future_input);

void check_extended_state(const SpectralSystem& sys, const ExtendedState& xs);

// s -> c T(t + s) x on [-t, 0] sampled with step dt (zero signal for t = 0).
Signal observe_trajectory(const SpectralSystem& sys, double t,
                          const SpectralVector& x, double dt);

// int_0^t T_{-1}(t - r) B u(r) dr, exact per segment of u.
SpectralVector control_to_state(const SpectralSystem& sys, double t,
                                const Signal& u);

// Same quantity through
//   A^{-1} (T(t) B u(0) - B u(t) + int_0^t T(t - r) B u'(r) dr),
// with u' the piecewise-constant derivative of the interpolant and the
// jumps at the ends of its support as point masses.
SpectralVector control_to_state_ibp(const SpectralSystem& sys, double t,
                                    const Signal& u);

enum class IoPath {
  // Convolution marched exactly over the grid.
  Direct,
  // -A^{-1} B u - A^{-2} B u' + A^{-2} int T(. - r) B u''(r) dr with
  // second-order finite differences for u', u''. Needs u(0) = u'(0) = 0.
  IntegrationByParts,
};

// s -> C_L int_0^{t+s} T_{-1}(t+s-r) B u(r) dr + D u(t+s) on [-t, 0].
Signal input_output_map(const SpectralSystem& sys, double t, const Signal& u,
                        double dt, IoPath path = IoPath::Direct);

// States x(i dt), i = 0..steps, of x' = A x + B u, x(0) = x0, one column
// per grid point.
Eigen::MatrixXcd state_trajectory(const SpectralSystem& sys,
                                  const SpectralVector& x0, const Signal& u,
                                  double dt, Eigen::Index steps);

// Lax-Phillips semigroup applied to xs. t must be a multiple of the grid
// step; throws HorizonError if nonzero history would leave the window.
ExtendedState step_extended_state(const SpectralSystem& sys, double t,
                                  const ExtendedState& xs);

// max(||dy||_{L2}, ||dx||_2, ||du||_{L2}) over the three components.
double product_distance(const ExtendedState& a, const ExtendedState& b);

// Distance between step(t + s, xs) and step(t, step(s, xs)).
double semigroup_law_residual(const SpectralSystem& sys, double t, double s,
                              const ExtendedState& xs);

}  // namespace wellposed
