#include "wellposed/heat.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wellposed/errors.hpp"
#include "wellposed/signal.hpp"

namespace wellposed::heat {

namespace {

constexpr double kPi = std::numbers::pi;

double norm_factor(long n) { return std::sqrt((n == 0 ? 1.0 : 2.0) / kPi); }

void check_config(const HeatConfig& cfg) {
  if (cfg.modes < 1) throw DomainError("heat system needs modes >= 1");
  if (!(cfg.shift > 0.0) || !std::isfinite(cfg.shift)) {
    throw StabilityError("heat system needs a positive shift");
  }
}

}  // namespace

double eigenfunction(long n, double s) {
  return norm_factor(n) * std::cos(static_cast<double>(n) * s);
}

SpectralSystem build_heat_system(const HeatConfig& cfg) {
  check_config(cfg);
  const Eigen::Index n_modes = cfg.modes;
  Eigen::VectorXcd alpha(n_modes);
  Eigen::MatrixXcd b(n_modes, 2);
  Eigen::MatrixXcd c(1, n_modes);
  for (Eigen::Index n = 0; n < n_modes; ++n) {
    double nn = static_cast<double>(n);
    double f = norm_factor(static_cast<long>(n));
    alpha[n] = cplx(-cfg.shift - nn * nn, 0.0);
    b(n, 0) = -f;
    b(n, 1) = (n % 2 == 0) ? f : -f;
    if (n % 2 == 1) {
      c(0, n) = 0.0;
    } else {
      c(0, n) = ((n / 2) % 2 == 0) ? f : -f;
    }
  }
  DiagonalGenerator gen(std::move(alpha), cfg.shift,
                        StabilityBound{1.0, -cfg.shift});
  auto tail = TailMajorant::inverse_quadratic(4.0 / kPi,
                                              std::min(1.0, cfg.shift));
  return SpectralSystem(std::move(gen), std::move(b), std::move(c),
                        Eigen::MatrixXcd::Zero(1, 2), tail, false);
}

DirichletValues dirichlet_eval(cplx lambda, double s, bool negate_root) {
  if (!(s >= 0.0 && s <= kPi)) throw DomainError("s must lie in [0, pi]");
  double re = -lambda.real();
  long centre = re > 0.0 ? std::lround(std::sqrt(re)) : 0;
  for (long n = std::max(0L, centre - 1); n <= centre + 1; ++n) {
    double n2 = static_cast<double>(n * n);
    if (std::abs(lambda + n2) <= 1e-12 * std::max(1.0, n2)) {
      throw SpectrumError("lambda = -" + std::to_string(n * n) +
                          " is an eigenvalue of the Neumann Laplacian");
    }
  }
  cplx mu = std::sqrt(lambda);
  if (negate_root) mu = -mu;

  if (std::abs(mu.real()) * kPi < 300.0) {
    cplx denom = mu * std::sinh(mu * kPi);
    return {-std::cosh(mu * (kPi - s)) / denom, std::cosh(mu * s) / denom};
  }
  // Large |Re mu|: divide through by e^{mu pi} with Re mu > 0.
  if (mu.real() < 0.0) mu = -mu;
  cplx d = mu * (1.0 - std::exp(-2.0 * mu * kPi));
  cplx q0 = -(std::exp(-mu * s) + std::exp(-mu * (2.0 * kPi - s))) / d;
  cplx q1 = (std::exp(mu * (s - kPi)) + std::exp(-mu * (s + kPi))) / d;
  return {q0, q1};
}

std::vector<double> reconstruct_temperature(const SpectralVector& x,
                                            std::span<const double> s_grid) {
  std::vector<double> out;
  out.reserve(s_grid.size());
  for (double s : s_grid) {
    cplx acc = 0.0;
    for (Eigen::Index n = 0; n < x.size(); ++n) {
      acc += x[n] * eigenfunction(static_cast<long>(n), s);
    }
    out.push_back(acc.real());
  }
  return out;
}

double admissibility_tail_estimate(const HeatConfig& cfg) {
  check_config(cfg);
  // sum_{n >= N} 1/(s + n^2) <= int_{N-1}^inf dx/(s + x^2)
  double root = std::sqrt(cfg.shift);
  double lower = static_cast<double>(cfg.modes) - 1.0;
  double integral = (kPi / 2.0 - std::atan(lower / root)) / root;
  return integral / kPi;
}

Certificate heat_certificate(const HeatConfig& cfg, CertifyOptions opts) {
  SpectralSystem sys = build_heat_system(cfg);
  opts.t0 = cfg.t0;
  opts.gamma_max = cfg.gamma_max;
  opts.gamma_steps = cfg.gamma_steps;
  opts.admissibility_tail_estimate = admissibility_tail_estimate(cfg);
  std::string canonical = "{\"builtin\":\"heat\",\"modes\":" +
                          std::to_string(cfg.modes) +
                          ",\"shift\":" + format_double(cfg.shift) + "}";
  return certify(sys, opts, canonical);
}

}  // namespace wellposed::heat
