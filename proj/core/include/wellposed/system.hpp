#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wellposed/spectral.hpp"

namespace wellposed {

/// Summable per-mode bound on |c_n| |b_{n,j}| / |lambda - alpha_n| for one
/// input channel, valid uniformly for Re(lambda) >= 0.
///
/// Two families are supported: a / (offset + n^2) and a (1 + n)^{-q}. The
/// tail sum is bounded by the integral of the (decreasing) majorant, so it
/// is an upper bound rather than an estimate; a power law with q <= 1 has an
/// infinite tail.
class TailMajorant {
 public:
  enum class Kind { InverseQuadratic, PowerLaw };

  static TailMajorant inverse_quadratic(double coefficient, double offset);
  static TailMajorant power_law(double coefficient, double exponent);

  Kind kind() const { return kind_; }
  double coefficient() const { return coefficient_; }
  // offset for InverseQuadratic, exponent for PowerLaw
  double parameter() const { return parameter_; }

  double term(std::size_t n) const;
  // Upper bound on sum_{n >= first} term(n); +inf when not summable.
  double tail_sum(std::size_t first) const;

 private:
  TailMajorant(Kind kind, double coefficient, double parameter)
      : kind_(kind), coefficient_(coefficient), parameter_(parameter) {}

  Kind kind_;
  double coefficient_;
  double parameter_;
};

/// Truncated spectral form of Sigma(A, B, C, D).
///
/// control is N x m (row n = mode n), observation is k x N, feedthrough is
/// k x m. Either `exact()` holds (the N modes are the whole system) or a
/// tail majorant describes the neglected modes; certificates need one of
/// the two.
class SpectralSystem {
 public:
  SpectralSystem(DiagonalGenerator gen, Eigen::MatrixXcd control,
                 Eigen::MatrixXcd observation, Eigen::MatrixXcd feedthrough,
                 std::optional<TailMajorant> tail = std::nullopt,
                 bool exact = false);

  const DiagonalGenerator& generator() const { return gen_; }
  const Eigen::MatrixXcd& control() const { return control_; }
  const Eigen::MatrixXcd& observation() const { return observation_; }
  const Eigen::MatrixXcd& feedthrough() const { return feedthrough_; }
  const std::optional<TailMajorant>& tail() const { return tail_; }
  bool exact() const { return exact_; }

  Eigen::Index modes() const { return gen_.size(); }
  Eigen::Index inputs() const { return control_.cols(); }
  Eigen::Index outputs() const { return observation_.rows(); }

  bool is_real() const;

  SpectralSystem with_observation(Eigen::MatrixXcd observation) const;
  SpectralSystem with_tail(std::optional<TailMajorant> tail, bool exact) const;

 private:
  DiagonalGenerator gen_;
  Eigen::MatrixXcd control_;
  Eigen::MatrixXcd observation_;
  Eigen::MatrixXcd feedthrough_;
  std::optional<TailMajorant> tail_;
  bool exact_;
};

// Parsed form of the JSON system description. Eigenvalues are given before
// the shift; build_system subtracts it.
struct SystemDescription {
  std::optional<std::string> builtin;
  std::optional<long> modes;
  std::optional<Eigen::VectorXcd> eigenvalues;
  std::optional<Eigen::MatrixXcd> control;
  std::optional<Eigen::MatrixXcd> observation;
  std::optional<Eigen::MatrixXcd> feedthrough;
  // Defaults to 0 for explicit systems and 1 for the heat builtin.
  std::optional<double> shift;
  std::optional<StabilityBound> stability;
  std::optional<TailMajorant> tail;
  bool exact = false;
};

SpectralSystem build_system(const SystemDescription& desc);

struct CompatReport {
  cplx lambda_probe;
  double truncated_sum = 0.0;
  double tail_bound = 0.0;
  double tolerance = 0.0;
  bool verdict = false;
  // Empty when verdict holds.
  std::string reason;
};

struct CompatOptions {
  // Largest tail bound accepted as a verified remainder.
  double tail_tolerance = 1e6;
};

// Sum_n Sum_j |c_n| |b_{n,j}| / |lambda - alpha_n| plus the majorant tail.
// Also checks the majorant against every retained mode. Throws
// CertificateIncompleteError if the system is neither exact nor has a
// majorant, DomainError if Re(lambda) <= omega.
CompatReport compatibility_check(const SpectralSystem& sys, cplx lambda,
                                 const CompatOptions& opts = {});

// Same as compatibility_check but uniform over the imaginary axis, using
// |i gamma - alpha_n| >= |Re(alpha_n)|.
CompatReport uniform_compatibility_check(const SpectralSystem& sys,
                                         const CompatOptions& opts = {});

struct MultiplierValue {
  Eigen::MatrixXcd value;  // k x m
  // Entrywise bound on the neglected modes.
  double tail_radius = 0.0;
};

// C_L R(i gamma, A_{-1}) B on the truncation. Throws PreconditionError
// unless compatibility holds at i gamma.
MultiplierValue m13_eval(const SpectralSystem& sys, double gamma);

// Truncated value without the compatibility precondition; used by scans
// that have verified compatibility uniformly.
Eigen::MatrixXcd m13_truncated(const SpectralSystem& sys, cplx lambda);

struct MultiplierReport {
  double grid_sup = 0.0;
  double argmax_gamma = 0.0;
  double upper_bound = 0.0;
  double truncated_bound = 0.0;
  double tail_bound = 0.0;
  double gamma_max = 0.0;
  long steps = 0;
  bool pass = false;
};

// Largest singular value of m13 on a uniform grid of [-gamma_max,
// gamma_max] (gridSup) and the gamma-uniform majorant (upperBound).
MultiplierReport m13_sup_scan(const SpectralSystem& sys, double gamma_max,
                              long steps, unsigned workers = 0);

double spectral_norm(const Eigen::MatrixXcd& m);

}  // namespace wellposed
