#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "wellposed/spectral.hpp"

namespace wellposed {

/// Vector-valued function of time sampled on a uniform grid.
///
/// Between grid points the signal is the linear interpolant of the samples;
/// outside [t0, t_end] it is zero. Samples are stored column-wise, one
/// column per grid point. Instances are immutable once built.
class Signal {
 public:
  Signal(double t0, double dt, Eigen::MatrixXcd samples);

  static Signal zeros(double t0, double dt, Eigen::Index count,
                      Eigen::Index dim);

  // Samples f(t0 + i dt) for i = 0..count-1; f returns an Eigen vector of
  // length dim (real or complex).
  template <typename F>
  static Signal sample(double t0, double dt, Eigen::Index count,
                       Eigen::Index dim, F&& f) {
    Eigen::MatrixXcd values(dim, count);
    for (Eigen::Index i = 0; i < count; ++i) {
      values.col(i) = f(t0 + static_cast<double>(i) * dt).template cast<cplx>();
    }
    return Signal(t0, dt, std::move(values));
  }

  double t0() const { return t0_; }
  double dt() const { return dt_; }
  double t_end() const { return t0_ + dt_ * static_cast<double>(size() - 1); }
  double time(Eigen::Index i) const { return t0_ + dt_ * static_cast<double>(i); }
  Eigen::Index size() const { return samples_.cols(); }
  Eigen::Index dim() const { return samples_.rows(); }
  const Eigen::MatrixXcd& samples() const { return samples_; }

  // Interpolated value; zero outside the grid.
  Eigen::VectorXcd operator()(double t) const;
  cplx value(double t, Eigen::Index channel) const;

  Signal scaled(cplx factor) const;
  // Same samples on a grid translated by delta (t0 -> t0 + delta).
  Signal translated(double delta) const;
  bool is_real() const;

 private:
  double t0_;
  double dt_;
  Eigen::MatrixXcd samples_;
};

// phi1(z) = int_0^1 e^{z s} ds and psi(z) = int_0^1 s e^{z s} ds, evaluated
// without cancellation for small |z|.
struct LinearExpMoments {
  cplx phi1;
  cplx psi;
};
LinearExpMoments linear_exp_moments(cplx z);

// Weights (w0, w1) with
//   int_{r0}^{r1} e^{alpha (T - r)} u(r) dr = w0 u0 + w1 u1
// for u linear between u(r0) = u0 and u(r1) = u1. Below |alpha (r1 - r0)|
// = 1e-8 the trapezoid limit is used.
std::pair<cplx, cplx> segment_weights(cplx alpha, double T, double r0,
                                      double r1);

cplx exp_segment_integral(cplx alpha, double T, double r0, double r1, cplx u0,
                          cplx u1);

// int_a^b e^{alpha (T - r)} u(r) dr for every channel of u, exact for the
// piecewise-linear interpolant (split at the grid points of u).
Eigen::VectorXcd exp_kernel_integral(cplx alpha, double T, double a, double b,
                                     const Signal& u);

// L^p norm of t -> ||u(t)||_2 over the grid support. p = 2 is exact; other
// p use composite Simpson with eight panels per grid segment.
double lp_norm(const Signal& s, double p);

// Number of dt-steps in t. Throws DomainError unless t is a non-negative
// multiple of dt to within 1e-9 relative.
Eigen::Index grid_steps(double t, double dt);

// CSV with header `time,c0,c1,...`. Imaginary parts, when present, are
// written as extra `cK_im` columns.
Signal read_signal_csv(std::istream& in, double fallback_dt = 1.0);
Signal read_signal_csv(const std::filesystem::path& path,
                       double fallback_dt = 1.0);
void write_signal_csv(std::ostream& out, const Signal& s,
                      const std::string& time_label = "time",
                      const std::string& column_prefix = "c");
void write_signal_csv(const std::filesystem::path& path, const Signal& s,
                      const std::string& time_label = "time",
                      const std::string& column_prefix = "c");

// %.17g formatting shared by every text writer.
std::string format_double(double v);

}  // namespace wellposed
