#include "wellposed/lax_phillips.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "wellposed/errors.hpp"

namespace wellposed {

namespace {

bool same_step(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b));
}

// Index offset k0 with u.t0 = k0 dt, if u sits on the dt grid.
std::optional<Eigen::Index> aligned_offset(const Signal& u, double dt) {
  if (!same_step(u.dt(), dt)) return std::nullopt;
  double q = u.t0() / dt;
  double r = std::round(q);
  if (std::abs(q - r) > 1e-9) return std::nullopt;
  return static_cast<Eigen::Index>(r);
}

void check_input(const SpectralSystem& sys, const Signal& u) {
  if (u.dim() != sys.inputs()) {
    throw DimensionError("input has " + std::to_string(u.dim()) +
                         " channels, system has " +
                         std::to_string(sys.inputs()));
  }
}

void check_state(const SpectralSystem& sys, const SpectralVector& x) {
  if (x.size() != sys.modes()) {
    throw DimensionError("state has " + std::to_string(x.size()) +
                         " entries, system has " +
                         std::to_string(sys.modes()) + " modes");
  }
}

// Samples of u at i dt, i = 0..steps (one column each).
Eigen::MatrixXcd input_on_grid(const Signal& u, double dt, Eigen::Index steps) {
  Eigen::MatrixXcd out(u.dim(), steps + 1);
  for (Eigen::Index i = 0; i <= steps; ++i) {
    out.col(i) = u(static_cast<double>(i) * dt);
  }
  return out;
}

// Second-order finite differences of the samples of u on its own grid.
std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> grid_derivatives(const Signal& u) {
  const auto& v = u.samples();
  const Eigen::Index n = u.size();
  const double h = u.dt();
  if (n < 4) {
    throw PreconditionError("smooth path needs at least 4 input samples");
  }
  Eigen::MatrixXcd d1(u.dim(), n);
  Eigen::MatrixXcd d2(u.dim(), n);
  d1.col(0) = (-3.0 * v.col(0) + 4.0 * v.col(1) - v.col(2)) / (2.0 * h);
  d1.col(n - 1) =
      (3.0 * v.col(n - 1) - 4.0 * v.col(n - 2) + v.col(n - 3)) / (2.0 * h);
  d2.col(0) =
      (2.0 * v.col(0) - 5.0 * v.col(1) + 4.0 * v.col(2) - v.col(3)) / (h * h);
  d2.col(n - 1) = (2.0 * v.col(n - 1) - 5.0 * v.col(n - 2) +
                   4.0 * v.col(n - 3) - v.col(n - 4)) /
                  (h * h);
  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    d1.col(i) = (v.col(i + 1) - v.col(i - 1)) / (2.0 * h);
    d2.col(i) = (v.col(i + 1) - 2.0 * v.col(i) + v.col(i - 1)) / (h * h);
  }
  return {std::move(d1), std::move(d2)};
}

}  // namespace

ExtendedState make_extended_state(const SpectralSystem& sys, double window,
                                  SpectralVector state, Signal future_input) {
  check_state(sys, state);
  check_input(sys, future_input);
  double dt = future_input.dt();
  Eigen::Index steps = grid_steps(window, dt);
  Signal past = Signal::zeros(-static_cast<double>(steps) * dt, dt, steps + 1,
                              sys.outputs());
  return {std::move(past), std::move(state), std::move(future_input)};
}

void check_extended_state(const SpectralSystem& sys, const ExtendedState& xs) {
  check_state(sys, xs.state);
  check_input(sys, xs.future_input);
  if (xs.past_output.dim() != sys.outputs()) {
    throw DimensionError("past output has " +
                         std::to_string(xs.past_output.dim()) +
                         " channels, system has " +
                         std::to_string(sys.outputs()));
  }
  const double dt = xs.future_input.dt();
  if (!same_step(xs.past_output.dt(), dt)) {
    throw DimensionError("past output and future input use different steps");
  }
  if (std::abs(xs.past_output.t_end()) > 1e-9 * dt) {
    throw DomainError("past output grid must end at 0");
  }
  if (std::abs(xs.future_input.t0()) > 1e-9 * dt) {
    throw DomainError("future input grid must start at 0");
  }
}

Signal observe_trajectory(const SpectralSystem& sys, double t,
                          const SpectralVector& x, double dt) {
  check_state(sys, x);
  Eigen::Index steps = grid_steps(t, dt);
  if (steps == 0) return Signal::zeros(0.0, dt, 1, sys.outputs());
  const auto& a = sys.generator().eigenvalues();
  Eigen::MatrixXcd modal(sys.modes(), steps + 1);
  for (Eigen::Index i = 0; i <= steps; ++i) {
    double tau = static_cast<double>(i) * dt;
    modal.col(i) = ((a * tau).array().exp() * x.array()).matrix();
  }
  return Signal(-static_cast<double>(steps) * dt, dt,
                sys.observation() * modal);
}

SpectralVector control_to_state(const SpectralSystem& sys, double t,
                                const Signal& u) {
  check_input(sys, u);
  if (!(t >= 0.0)) throw DomainError("time must be >= 0");
  SpectralVector x = SpectralVector::Zero(sys.modes());
  if (t == 0.0) return x;
  const auto& a = sys.generator().eigenvalues();
  for (Eigen::Index n = 0; n < sys.modes(); ++n) {
    Eigen::VectorXcd conv = exp_kernel_integral(a[n], t, 0.0, t, u);
    x[n] = (sys.control().row(n) * conv)(0);
  }
  return x;
}

SpectralVector control_to_state_ibp(const SpectralSystem& sys, double t,
                                    const Signal& u) {
  check_input(sys, u);
  if (!(t >= 0.0)) throw DomainError("time must be >= 0");
  SpectralVector x = SpectralVector::Zero(sys.modes());
  if (t == 0.0) return x;

  const double lo = std::max(0.0, u.t0());
  const double hi = std::min(t, u.t_end());
  const double tol = 1e-12 * u.dt();
  Eigen::VectorXcd u_start = Eigen::VectorXcd::Zero(u.dim());
  if (u.t0() <= tol && u.t_end() >= 0.0) u_start = u(0.0);
  Eigen::VectorXcd u_end = Eigen::VectorXcd::Zero(u.dim());
  if (t <= u.t_end() + tol && t >= u.t0() - tol) u_end = u(t);

  const auto& a = sys.generator().eigenvalues();
  const auto& v = u.samples();
  for (Eigen::Index n = 0; n < sys.modes(); ++n) {
    const cplx alpha = a[n];
    Eigen::VectorXcd deriv_term = Eigen::VectorXcd::Zero(u.dim());
    if (lo < hi) {
      for (Eigen::Index k = 0; k + 1 < u.size(); ++k) {
        double r0 = std::max(lo, u.time(k));
        double r1 = std::min(hi, u.time(k + 1));
        if (r1 - r0 <= tol) continue;
        Eigen::VectorXcd slope = (v.col(k + 1) - v.col(k)) / u.dt();
        cplx kernel =
            (std::exp(alpha * (t - r0)) - std::exp(alpha * (t - r1))) / alpha;
        deriv_term += kernel * slope;
      }
    }
    // Jumps of the zero-extended interpolant inside (0, t).
    if (u.t0() > tol && u.t0() < t - tol) {
      deriv_term += std::exp(alpha * (t - u.t0())) * v.col(0);
    }
    if (u.t_end() > tol && u.t_end() < t - tol) {
      deriv_term -= std::exp(alpha * (t - u.t_end())) * v.col(u.size() - 1);
    }
    Eigen::VectorXcd combined =
        std::exp(alpha * t) * u_start - u_end + deriv_term;
    x[n] = (sys.control().row(n) * combined)(0) / alpha;
  }
  return x;
}

Eigen::MatrixXcd state_trajectory(const SpectralSystem& sys,
                                  const SpectralVector& x0, const Signal& u,
                                  double dt, Eigen::Index steps) {
  check_state(sys, x0);
  check_input(sys, u);
  if (!(dt > 0.0)) throw DomainError("grid step must be positive");
  if (steps < 0) throw DomainError("step count must be >= 0");

  const auto& a = sys.generator().eigenvalues();
  const Eigen::Index n_modes = sys.modes();
  Eigen::MatrixXcd traj(n_modes, steps + 1);
  traj.col(0) = x0;
  if (steps == 0) return traj;

  Eigen::ArrayXcd decay = (a * dt).array().exp();
  auto offset = aligned_offset(u, dt);
  if (offset) {
    // One input segment per step: precompute the per-mode weights and the
    // projected samples B u_k.
    Eigen::ArrayXcd w0(n_modes), w1(n_modes);
    for (Eigen::Index n = 0; n < n_modes; ++n) {
      auto [c0, c1] = segment_weights(a[n], dt, 0.0, dt);
      w0[n] = c0;
      w1[n] = c1;
    }
    Eigen::MatrixXcd projected = sys.control() * u.samples();
    const Eigen::Index k0 = *offset;
    for (Eigen::Index i = 1; i <= steps; ++i) {
      Eigen::ArrayXcd next = decay * traj.col(i - 1).array();
      Eigen::Index k = i - 1 - k0;
      if (k >= 0 && k + 1 < u.size()) {
        next += w0 * projected.col(k).array() + w1 * projected.col(k + 1).array();
      }
      traj.col(i) = next.matrix();
    }
    return traj;
  }

  for (Eigen::Index i = 1; i <= steps; ++i) {
    double t1 = static_cast<double>(i) * dt;
    double t0 = t1 - dt;
    for (Eigen::Index n = 0; n < n_modes; ++n) {
      Eigen::VectorXcd conv = exp_kernel_integral(a[n], t1, t0, t1, u);
      traj(n, i) = decay[n] * traj(n, i - 1) +
                   (sys.control().row(n) * conv)(0);
    }
  }
  return traj;
}

Signal input_output_map(const SpectralSystem& sys, double t, const Signal& u,
                        double dt, IoPath path) {
  check_input(sys, u);
  Eigen::Index steps = grid_steps(t, dt);
  if (steps == 0) return Signal::zeros(0.0, dt, 1, sys.outputs());
  const double start = -static_cast<double>(steps) * dt;
  Eigen::MatrixXcd u_grid = input_on_grid(u, dt, steps);

  if (path == IoPath::Direct) {
    Eigen::MatrixXcd traj = state_trajectory(
        sys, SpectralVector::Zero(sys.modes()), u, dt, steps);
    return Signal(start, dt,
                  sys.observation() * traj + sys.feedthrough() * u_grid);
  }

  // Smooth path: u must start at 0 with u(0) = u'(0) = 0 and cover [0, t].
  const double tol = 1e-9 * u.dt();
  if (std::abs(u.t0()) > tol) {
    throw PreconditionError("smooth path needs an input grid starting at 0");
  }
  if (t > u.t_end() + tol) {
    throw PreconditionError("smooth path needs the input to cover [0, t]");
  }
  auto [d1, d2] = grid_derivatives(u);
  double scale = u.samples().cwiseAbs().maxCoeff();
  if (u.samples().col(0).cwiseAbs().maxCoeff() > 1e-9 * scale) {
    throw PreconditionError("smooth path needs u(0) = 0");
  }
  // Relative to the steepest slope, so the check survives zero padding.
  if (d1.col(0).cwiseAbs().maxCoeff() > 1e-3 * d1.cwiseAbs().maxCoeff()) {
    throw PreconditionError("smooth path needs u'(0) = 0");
  }
  Signal first(u.t0(), u.dt(), std::move(d1));
  Signal second(u.t0(), u.dt(), std::move(d2));

  Eigen::MatrixXcd conv = state_trajectory(
      sys, SpectralVector::Zero(sys.modes()), second, dt, steps);
  Eigen::MatrixXcd u1_grid = input_on_grid(first, dt, steps);
  Eigen::MatrixXcd bu = sys.control() * u_grid;
  Eigen::MatrixXcd bu1 = sys.control() * u1_grid;
  const auto& a = sys.generator().eigenvalues();
  Eigen::MatrixXcd z(sys.modes(), steps + 1);
  for (Eigen::Index n = 0; n < sys.modes(); ++n) {
    cplx inv = 1.0 / a[n];
    cplx inv2 = inv * inv;
    z.row(n) = -inv * bu.row(n) - inv2 * bu1.row(n) + inv2 * conv.row(n);
  }
  return Signal(start, dt, sys.observation() * z + sys.feedthrough() * u_grid);
}

ExtendedState step_extended_state(const SpectralSystem& sys, double t,
                                  const ExtendedState& xs) {
  check_extended_state(sys, xs);
  const double dt = xs.future_input.dt();
  Eigen::Index steps = grid_steps(t, dt);
  if (steps == 0) return xs;

  const Eigen::Index window = xs.past_output.size();
  if (steps > window - 1) {
    throw HorizonError("step of " + format_double(t) +
                       " exceeds the past-output window of " +
                       format_double(-xs.past_output.t0()));
  }
  const auto& old_past = xs.past_output.samples();
  for (Eigen::Index i = 0; i < steps; ++i) {
    if (old_past.col(i).cwiseAbs().maxCoeff() != 0.0) {
      throw HorizonError("nonzero past output would leave the window of " +
                         format_double(-xs.past_output.t0()) +
                         "; enlarge the window");
    }
  }

  Eigen::MatrixXcd traj =
      state_trajectory(sys, xs.state, xs.future_input, dt, steps);
  Eigen::MatrixXcd fresh =
      sys.observation() * traj +
      sys.feedthrough() * input_on_grid(xs.future_input, dt, steps);

  Eigen::MatrixXcd past(sys.outputs(), window);
  const Eigen::Index kept = window - 1 - steps;
  past.leftCols(kept) = old_past.middleCols(steps, kept);
  past.rightCols(steps + 1) = fresh;

  const auto& fut = xs.future_input.samples();
  Signal future =
      steps < xs.future_input.size()
          ? Signal(0.0, dt, fut.rightCols(xs.future_input.size() - steps))
          : Signal::zeros(0.0, dt, 1, sys.inputs());

  return {Signal(xs.past_output.t0(), dt, std::move(past)), traj.col(steps),
          std::move(future)};
}

double product_distance(const ExtendedState& a, const ExtendedState& b) {
  auto signal_distance = [](const Signal& p, const Signal& q) {
    if (p.size() != q.size() || p.dim() != q.dim() ||
        std::abs(p.t0() - q.t0()) > 1e-9 * p.dt() || !same_step(p.dt(), q.dt())) {
      throw DimensionError("signals live on different grids");
    }
    return lp_norm(Signal(p.t0(), p.dt(), p.samples() - q.samples()), 2.0);
  };
  double dy = signal_distance(a.past_output, b.past_output);
  double dx = (a.state - b.state).norm();
  double du = signal_distance(a.future_input, b.future_input);
  return std::max({dy, dx, du});
}

double semigroup_law_residual(const SpectralSystem& sys, double t, double s,
                              const ExtendedState& xs) {
  if (!(t >= 0.0) || !(s >= 0.0)) throw DomainError("times must be >= 0");
  ExtendedState joint = step_extended_state(sys, t + s, xs);
  ExtendedState split =
      step_extended_state(sys, t, step_extended_state(sys, s, xs));
  return product_distance(joint, split);
}

}  // namespace wellposed
