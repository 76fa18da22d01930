#include "wellposed/admissibility.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "wellposed/errors.hpp"
#include "wellposed/parallel.hpp"
#include "wellposed/signal.hpp"

namespace wellposed {

namespace {

// weights_mn * (e^{(conj(a_m) + a_n) t0} - 1) / (conj(a_m) + a_n), assembled
// row by row in parallel.
Eigen::MatrixXcd kernel_gram(const Eigen::VectorXcd& a,
                             const Eigen::MatrixXcd& weights, double t0,
                             unsigned workers) {
  const Eigen::Index n = a.size();
  // Stability keeps Re(conj(a_m) + a_n) < 0; guard before going parallel.
  if (n > 0 && !(a.real().maxCoeff() < 0.0)) {
    throw InternalError("Gram kernel needs Re(a_n) < 0");
  }
  Eigen::MatrixXcd g(n, n);
  parallel_chunks(
      static_cast<std::size_t>(n),
      [&](std::size_t begin, std::size_t end, unsigned) {
        for (auto m = static_cast<Eigen::Index>(begin);
             m < static_cast<Eigen::Index>(end); ++m) {
          for (Eigen::Index k = 0; k < n; ++k) {
            cplx z = std::conj(a[m]) + a[k];
            g(m, k) = weights(m, k) * t0 * linear_exp_moments(z * t0).phi1;
          }
        }
      },
      workers);
  // Exact Hermitian symmetry for the solver.
  Eigen::MatrixXcd sym = (g + g.adjoint()) * 0.5;
  return sym;
}

double largest_eigenvalue(const Eigen::MatrixXcd& g) {
  if (g.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw InternalError("Hermitian eigen-solver did not converge");
  }
  return std::max(0.0, es.eigenvalues().maxCoeff());
}

void check_t0(double t0) {
  if (!(t0 > 0.0) || !std::isfinite(t0)) {
    throw DomainError("t0 must be positive and finite");
  }
}

}  // namespace

GramResult observation_gram(const SpectralSystem& sys, double t0,
                            unsigned workers) {
  check_t0(t0);
  const auto& c = sys.observation();
  Eigen::MatrixXcd weights = c.adjoint() * c;
  GramResult r;
  r.gram = kernel_gram(sys.generator().eigenvalues(), weights, t0, workers);
  r.constant = largest_eigenvalue(r.gram);
  return r;
}

GramResult control_gram(const SpectralSystem& sys, double t0,
                        unsigned workers) {
  check_t0(t0);
  // Kernel (a_m + conj(a_n)) is the conjugate of the observation one, so
  // assemble the conjugate Gram and conjugate back.
  const auto& b = sys.control();
  Eigen::MatrixXcd weights = (b * b.adjoint()).conjugate();
  GramResult r;
  r.gram = kernel_gram(sys.generator().eigenvalues(), weights, t0, workers)
               .conjugate();
  r.constant = std::sqrt(largest_eigenvalue(r.gram));
  return r;
}

PairInterval pair_constant(const std::optional<MultiplierReport>& scan) {
  if (!scan) throw PreconditionError("pair constant needs a multiplier scan");
  return {scan->grid_sup, scan->upper_bound};
}

GlobalConstants global_constants(double M_obs, double M_ctl, double M_pair,
                                 const StabilityBound& bound, double p,
                                 double t0) {
  if (!(bound.omega < 0.0)) {
    throw StabilityError("global constants need omega < 0");
  }
  if (!(bound.K >= 1.0)) throw DomainError("global constants need K >= 1");
  if (!(p >= 1.0)) throw DomainError("global constants need p >= 1");
  check_t0(t0);
  const double K = bound.K;
  const double w = bound.omega;
  GlobalConstants g;
  g.M_C = M_obs + M_obs * std::pow(K, p) / (-std::expm1(p * w * t0));
  g.M_B = M_ctl * K + M_ctl * K / (-std::expm1(w * t0));
  g.M_BC = M_pair + std::pow(g.M_C, 1.0 / p) * g.M_B * K / (-std::expm1(w));
  g.M_BC_power = std::pow(g.M_BC, p);
  return g;
}

AdmissibilityReport admissibility_report(const SpectralSystem& sys, double t0,
                                         const MultiplierReport& scan,
                                         unsigned workers) {
  AdmissibilityReport r;
  r.t0 = t0;
  r.p = 2.0;
  r.bound = sys.generator().bound();
  r.M_obs = observation_gram(sys, t0, workers).constant;
  r.M_ctl = control_gram(sys, t0, workers).constant;
  r.M_pair = pair_constant(scan);
  r.globals = global_constants(r.M_obs, r.M_ctl, r.M_pair.upper, r.bound, 2.0,
                               t0);
  return r;
}

}  // namespace wellposed
