#pragma once

#include <complex>

#include <Eigen/Dense>

namespace wellposed {

using cplx = std::complex<double>;

// Coordinates of a state in the truncated sequence space.
using SpectralVector = Eigen::VectorXcd;

// Bound ||T(t)|| <= K e^{omega t} of an exponentially stable semigroup.
struct StabilityBound {
  double K = 1.0;
  double omega = -1.0;
};

/// Diagonal generator x_n -> alpha_n x_n on the first N modes.
///
/// Eigenvalues are stored after the stabilising shift has been applied:
/// `eigenvalues() == original - shift`. Construction checks
/// Re(alpha_n) <= omega < 0 and K >= 1, so every instance generates an
/// exponentially stable semigroup.
class DiagonalGenerator {
 public:
  DiagonalGenerator(Eigen::VectorXcd shifted_eigenvalues, double shift,
                    StabilityBound bound);

  // Uses K = 1 and omega = max Re(alpha_n).
  static DiagonalGenerator from_shifted(Eigen::VectorXcd shifted_eigenvalues,
                                        double shift = 0.0);

  const Eigen::VectorXcd& eigenvalues() const { return eigenvalues_; }
  Eigen::Index size() const { return eigenvalues_.size(); }
  double shift() const { return shift_; }
  const StabilityBound& bound() const { return bound_; }

  // Eigenvalues before the shift, i.e. the spectrum of the original system.
  Eigen::VectorXcd original_eigenvalues() const;

 private:
  Eigen::VectorXcd eigenvalues_;
  double shift_;
  StabilityBound bound_;
};

// (e^{alpha_n t} x_n)_n. Throws DomainError for t < 0.
SpectralVector semigroup_apply(const DiagonalGenerator& gen, double t,
                               const SpectralVector& x);

// (x_n / (lambda - alpha_n))_n. Throws SpectrumError when lambda is an
// eigenvalue.
SpectralVector resolvent_apply(const DiagonalGenerator& gen, cplx lambda,
                               const SpectralVector& x);

// ||R(lambda_ref, A) x||, the norm of the extrapolation space X_{-1}.
double extrapolation_norm(const DiagonalGenerator& gen, cplx lambda_ref,
                          const SpectralVector& x);

// True when lambda lies within a relative distance of 1e-14 of some
// eigenvalue.
bool on_spectrum(const DiagonalGenerator& gen, cplx lambda);

}  // namespace wellposed
