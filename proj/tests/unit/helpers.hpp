#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "wellposed/system.hpp"

namespace wellposed::testing {

// alpha = -1, b = c = 1, D = d, exact.
inline SpectralSystem one_mode(double d = 0.0) {
  Eigen::VectorXcd a(1);
  a << cplx(-1.0, 0.0);
  Eigen::MatrixXcd one = Eigen::MatrixXcd::Constant(1, 1, 1.0);
  return SpectralSystem(DiagonalGenerator(a, 0.0, {1.0, -1.0}), one, one,
                        Eigen::MatrixXcd::Constant(1, 1, d), std::nullopt, true);
}

inline double rel(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

}  // namespace wellposed::testing
