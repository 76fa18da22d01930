#include "wellposed/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wellposed/errors.hpp"

namespace wellposed {

namespace {

void check_length(const DiagonalGenerator& gen, const SpectralVector& x) {
  if (x.size() != gen.size()) {
    throw DimensionError("state has " + std::to_string(x.size()) +
                         " entries, generator has " +
                         std::to_string(gen.size()) + " modes");
  }
}

void check_finite(const Eigen::VectorXcd& v, const char* what) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i].real()) || !std::isfinite(v[i].imag())) {
      throw DomainError(std::string(what) + " contains a non-finite entry");
    }
  }
}

}  // namespace

DiagonalGenerator::DiagonalGenerator(Eigen::VectorXcd shifted_eigenvalues,
                                     double shift, StabilityBound bound)
    : eigenvalues_(std::move(shifted_eigenvalues)),
      shift_(shift),
      bound_(bound) {
  check_finite(eigenvalues_, "eigenvalue list");
  if (eigenvalues_.size() == 0) {
    throw DimensionError("generator needs at least one mode");
  }
  if (!(bound_.K >= 1.0) || !std::isfinite(bound_.K)) {
    throw StabilityError("stability constant K must be >= 1");
  }
  if (!(bound_.omega < 0.0)) {
    throw StabilityError("growth bound omega must be negative");
  }
  if (!(shift_ >= 0.0) || !std::isfinite(shift_)) {
    throw StabilityError("shift must be a finite non-negative number");
  }
  for (Eigen::Index n = 0; n < eigenvalues_.size(); ++n) {
    if (eigenvalues_[n].real() > bound_.omega) {
      throw StabilityError("Re(alpha_" + std::to_string(n) + ") = " +
                           std::to_string(eigenvalues_[n].real()) +
                           " exceeds omega = " + std::to_string(bound_.omega));
    }
  }
}

DiagonalGenerator DiagonalGenerator::from_shifted(
    Eigen::VectorXcd shifted_eigenvalues, double shift) {
  if (shifted_eigenvalues.size() == 0) {
    throw DimensionError("generator needs at least one mode");
  }
  double omega = shifted_eigenvalues.real().maxCoeff();
  if (!(omega < 0.0)) {
    throw StabilityError("spectrum is not in the open left half-plane; "
                         "max Re(alpha) = " + std::to_string(omega));
  }
  return DiagonalGenerator(std::move(shifted_eigenvalues), shift,
                           StabilityBound{1.0, omega});
}

Eigen::VectorXcd DiagonalGenerator::original_eigenvalues() const {
  return eigenvalues_.array() + cplx(shift_, 0.0);
}

bool on_spectrum(const DiagonalGenerator& gen, cplx lambda) {
  const auto& a = gen.eigenvalues();
  for (Eigen::Index n = 0; n < a.size(); ++n) {
    double scale = std::max(1.0, std::abs(a[n]));
    if (std::abs(lambda - a[n]) <= 1e-14 * scale) return true;
  }
  return false;
}

SpectralVector semigroup_apply(const DiagonalGenerator& gen, double t,
                               const SpectralVector& x) {
  check_length(gen, x);
  if (!(t >= 0.0)) throw DomainError("semigroup time must be >= 0");
  SpectralVector out(x.size());
  const auto& a = gen.eigenvalues();
  for (Eigen::Index n = 0; n < x.size(); ++n) {
    out[n] = std::exp(a[n] * t) * x[n];
  }
  return out;
}

SpectralVector resolvent_apply(const DiagonalGenerator& gen, cplx lambda,
                               const SpectralVector& x) {
  check_length(gen, x);
  if (on_spectrum(gen, lambda)) {
    throw SpectrumError("resolvent requested on the spectrum");
  }
  SpectralVector out(x.size());
  const auto& a = gen.eigenvalues();
  for (Eigen::Index n = 0; n < x.size(); ++n) {
    out[n] = x[n] / (lambda - a[n]);
  }
  return out;
}

double extrapolation_norm(const DiagonalGenerator& gen, cplx lambda_ref,
                          const SpectralVector& x) {
  return resolvent_apply(gen, lambda_ref, x).norm();
}

}  // namespace wellposed
