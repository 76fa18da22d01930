#include "wellposed/laplace.hpp"

#include <algorithm>
#include <cmath>

#include "wellposed/errors.hpp"
#include "wellposed/lax_phillips.hpp"

namespace wellposed {

namespace {

constexpr double kRounding = 1e-12;

// Every other sample from the first grid point at or after 0, plus the last
// fine segment when the count does not pair up.
Eigen::VectorXcd coarse_integral(const Signal& s, cplx lambda) {
  Eigen::Index first = 0;
  while (first < s.size() && s.time(first) < -1e-12 * s.dt()) ++first;
  const Eigen::Index pairs = (s.size() - 1 - first) / 2;
  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(s.dim());
  if (pairs == 0) {
    return exp_kernel_integral(lambda, 0.0, 0.0, s.t_end(), s);
  }
  Eigen::MatrixXcd coarse(s.dim(), pairs + 1);
  for (Eigen::Index i = 0; i <= pairs; ++i) {
    coarse.col(i) = s.samples().col(first + 2 * i);
  }
  Signal cs(s.time(first), 2.0 * s.dt(), std::move(coarse));
  acc += exp_kernel_integral(lambda, 0.0, 0.0, cs.t_end(), cs);
  // A signal starting before 0 contributes its partial first segment.
  if (first > 0) acc += exp_kernel_integral(lambda, 0.0, 0.0, s.time(first), s);
  if (first + 2 * pairs < s.size() - 1) {
    acc += exp_kernel_integral(lambda, 0.0, cs.t_end(), s.t_end(), s);
  }
  return acc;
}

EntryResidual finish(double residual, double quad, double tail) {
  EntryResidual e;
  e.residual = residual;
  e.quadrature_budget = quad;
  e.tail_budget = tail;
  e.budget = quad + tail;
  e.pass = std::isfinite(residual) && residual <= e.budget;
  return e;
}

EntryResidual worst(const EntryResidual& a, const EntryResidual& b) {
  EntryResidual e;
  e.residual = std::max(a.residual, b.residual);
  e.quadrature_budget = std::max(a.quadrature_budget, b.quadrature_budget);
  e.tail_budget = std::max(a.tail_budget, b.tail_budget);
  e.budget = std::max(a.budget, b.budget);
  e.pass = a.pass && b.pass;
  return e;
}

// Same input on a grid twice as coarse, still covering [u.t0, u.t_end].
Signal coarsen(const Signal& u) {
  const Eigen::Index count = (u.size() + 2) / 2;
  Eigen::MatrixXcd v(u.dim(), count);
  for (Eigen::Index i = 0; i < count; ++i) {
    Eigen::Index k = 2 * i;
    v.col(i) = k < u.size() ? Eigen::VectorXcd(u.samples().col(k))
                            : Eigen::VectorXcd::Zero(u.dim());
  }
  return Signal(u.t0(), 2.0 * u.dt(), std::move(v));
}

}  // namespace

LaplaceResult laplace_transform(const Signal& s, cplx lambda,
                                const std::optional<TailDecay>& tail) {
  LaplaceResult r;
  r.value = exp_kernel_integral(lambda, 0.0, 0.0, s.t_end(), s);
  if (tail) {
    if (!(lambda.real() > 0.0) || !(lambda.real() > tail->omega)) {
      throw DomainError(
          "Laplace transform with a tail needs Re(lambda) > max(0, omega)");
    }
    double gap = lambda.real() - tail->omega;
    r.tail_bound = tail->K * tail->amplitude *
                   std::exp(-gap * std::max(0.0, s.t_end())) / gap;
  }
  double richardson = (r.value - coarse_integral(s, lambda)).norm();
  double scale = s.samples().size() == 0
                     ? 0.0
                     : s.samples().cwiseAbs().maxCoeff() *
                           std::max(0.0, s.t_end() - std::max(0.0, s.t0()));
  r.quadrature_budget = richardson + kRounding * (scale + r.value.norm());
  return r;
}

ResolventResidualReport verify_resolvent_entries(const SpectralSystem& sys,
                                                 cplx lambda,
                                                 const SpectralVector& x,
                                                 const Signal& u,
                                                 const VerifyOptions& opts) {
  const auto& gen = sys.generator();
  const StabilityBound& sb = gen.bound();
  if (!(lambda.real() > 0.0)) {
    throw DomainError("resolvent checks need Re(lambda) > 0");
  }
  if (x.size() != sys.modes()) throw DimensionError("state size mismatch");
  if (u.dim() != sys.inputs()) throw DimensionError("input size mismatch");
  const double T = opts.horizon;
  const double dt = opts.dt;
  const Eigen::Index steps = grid_steps(T, dt);
  const double c_norm = spectral_norm(sys.observation());

  ResolventResidualReport rep;
  rep.lambda = lambda;

  // r12: t -> c T(t + s) x on [-s, T - s], zero before -s. Transformed mode
  // by mode so that the Richardson estimate cannot cancel across modes.
  {
    const auto& a = gen.eigenvalues();
    Eigen::MatrixXcd modal(sys.modes(), steps + 1);
    for (Eigen::Index i = 0; i <= steps; ++i) {
      double tau = static_cast<double>(i) * dt;
      modal.col(i) = ((a * tau).array().exp() * x.array()).matrix();
    }
    Eigen::VectorXd c_cols = sys.observation().colwise().norm().transpose();
    Eigen::VectorXcd crx = sys.observation() * resolvent_apply(gen, lambda, x);
    bool first = true;
    for (double s : opts.s_samples) {
      if (s > 0.0) throw DomainError("observation samples need s <= 0");
      Signal f(-s, dt, modal);
      Eigen::VectorXcd fine = exp_kernel_integral(lambda, 0.0, 0.0, f.t_end(), f);
      Eigen::VectorXd diff = (fine - coarse_integral(f, lambda)).cwiseAbs();
      Eigen::VectorXcd value = sys.observation() * fine;
      double scale = modal.cwiseAbs().colwise().sum().maxCoeff() * c_cols.maxCoeff() *
                     (f.t_end() - f.t0());
      double quad = c_cols.dot(diff) + kRounding * (scale + value.norm());
      double gap = lambda.real() - sb.omega;
      double tail = sb.K * c_norm * x.norm() * std::exp(sb.omega * s) *
                    std::exp(-gap * f.t_end()) / gap;
      double res = (value - std::exp(lambda * s) * crx).norm();
      EntryResidual e = finish(res, quad, tail);
      rep.r12 = first ? e : worst(rep.r12, e);
      first = false;
    }
  }

  // Input transform; u vanishes beyond its grid, so no tail.
  Eigen::VectorXcd u_hat = laplace_transform(u, lambda).value;
  Eigen::VectorXcd r_bu = resolvent_apply(gen, lambda, sys.control() * u_hat);
  double u_after = std::max(0.0, u.t_end() - T);
  if (u_after > 0.0) {
    throw PreconditionError("resolvent checks need the input to end by the horizon");
  }

  // r23: t -> int_0^t T(t - r) B u(r) dr. Beyond T it decays from g(T).
  Eigen::MatrixXcd traj =
      state_trajectory(sys, SpectralVector::Zero(sys.modes()), u, dt, steps);
  {
    Signal g(0.0, dt, traj);
    double g_end = traj.col(steps).norm();
    TailDecay decay{sb.K, sb.omega, g_end * std::exp(-sb.omega * T)};
    LaplaceResult lt = laplace_transform(g, lambda, decay);
    double res = (lt.value - r_bu).norm();
    rep.r23 = finish(res, lt.quadrature_budget, lt.tail_bound);
  }

  // r13: output y(t) on [0, T]; beyond T, |y| <= ||c|| K e^{omega(t-T)} |g(T)|.
  {
    IoPath path = opts.smooth_path ? IoPath::IntegrationByParts : IoPath::Direct;
    Signal u_cover = u;
    if (opts.smooth_path && u.t_end() < T) {
      // Zero-extend to cover [0, T] on the input's own grid.
      Eigen::Index need = grid_steps(T - u.t0(), u.dt()) + 1;
      Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(u.dim(), need);
      v.leftCols(u.size()) = u.samples();
      u_cover = Signal(u.t0(), u.dt(), std::move(v));
    }
    Signal y_rev = input_output_map(sys, T, u_cover, dt, path);
    Signal y(0.0, dt, y_rev.samples());
    double g_end = traj.col(steps).norm();
    TailDecay decay{sb.K, sb.omega, c_norm * g_end * std::exp(-sb.omega * T)};
    LaplaceResult lt = laplace_transform(y, lambda, decay);
    Eigen::VectorXcd expected =
        sys.observation() * r_bu + sys.feedthrough() * u_hat;
    double quad = lt.quadrature_budget;
    if (opts.smooth_path) {
      // Finite-difference error: same pipeline on a twice coarser input.
      Signal y_c_rev = input_output_map(sys, T, coarsen(u_cover), dt, path);
      Signal y_c(0.0, dt, y_c_rev.samples());
      quad += (lt.value - laplace_transform(y_c, lambda).value).norm();
    }
    double res = (lt.value - expected).norm();
    rep.r13 = finish(res, quad, lt.tail_bound);
  }

  rep.pass = rep.r12.pass && rep.r23.pass && rep.r13.pass;
  return rep;
}

}  // namespace wellposed
