#include "wellposed/system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "wellposed/errors.hpp"
#include "wellposed/heat.hpp"
#include "wellposed/parallel.hpp"

namespace wellposed {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string dims(Eigen::Index r, Eigen::Index c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

// Accumulates the pairing terms |c_n| |b_{n,j}| / dist_n and checks them
// against the majorant. dist(n) is the lower bound on |lambda - alpha_n|.
template <typename Dist>
CompatReport pairing_report(const SpectralSystem& sys, cplx probe, Dist dist,
                            const CompatOptions& opts) {
  if (!sys.exact() && !sys.tail()) {
    throw CertificateIncompleteError(
        "system has neither a tail majorant nor an exact truncation");
  }
  CompatReport rep;
  rep.lambda_probe = probe;
  rep.tolerance = opts.tail_tolerance;

  const auto& b = sys.control();
  const auto& c = sys.observation();
  std::string violation;
  for (Eigen::Index n = 0; n < sys.modes(); ++n) {
    double d = dist(n);
    double cn = c.col(n).norm();
    for (Eigen::Index j = 0; j < sys.inputs(); ++j) {
      double num = cn * std::abs(b(n, j));
      if (num == 0.0) continue;
      if (!(d > 0.0)) {
        throw SpectrumError("compatibility probe lies on the spectrum");
      }
      double term = num / d;
      rep.truncated_sum += term;
      if (sys.tail() && violation.empty()) {
        double bound = sys.tail()->term(static_cast<std::size_t>(n));
        if (term > bound * (1.0 + 1e-12)) {
          violation = "tail majorant violated at mode " + std::to_string(n) +
                      ", channel " + std::to_string(j) + " (term " +
                      std::to_string(term) + " > bound " +
                      std::to_string(bound) + ")";
        }
      }
    }
  }
  if (sys.exact()) {
    rep.tail_bound = 0.0;
  } else {
    double per_channel =
        sys.tail()->tail_sum(static_cast<std::size_t>(sys.modes()));
    rep.tail_bound = per_channel * static_cast<double>(sys.inputs());
  }

  double total = rep.truncated_sum + rep.tail_bound;
  if (!std::isfinite(total)) {
    rep.reason = "pairing series is not summable (tail bound diverges)";
  } else if (!(rep.tail_bound < rep.tolerance)) {
    rep.reason = "tail bound " + std::to_string(rep.tail_bound) +
                 " exceeds tolerance " + std::to_string(rep.tolerance);
  } else if (!violation.empty()) {
    rep.reason = violation;
  }
  rep.verdict = rep.reason.empty();
  return rep;
}

}  // namespace

TailMajorant TailMajorant::inverse_quadratic(double coefficient, double offset) {
  if (!(coefficient >= 0.0) || !(offset > 0.0)) {
    throw SchemaError("inverse-quadratic majorant needs coefficient >= 0 and "
                      "offset > 0");
  }
  return TailMajorant(Kind::InverseQuadratic, coefficient, offset);
}

TailMajorant TailMajorant::power_law(double coefficient, double exponent) {
  if (!(coefficient >= 0.0) || !(exponent >= 0.0)) {
    throw SchemaError("power-law majorant needs coefficient >= 0 and "
                      "exponent >= 0");
  }
  return TailMajorant(Kind::PowerLaw, coefficient, exponent);
}

double TailMajorant::term(std::size_t n) const {
  double x = static_cast<double>(n);
  if (kind_ == Kind::InverseQuadratic) {
    return coefficient_ / (parameter_ + x * x);
  }
  return coefficient_ * std::pow(1.0 + x, -parameter_);
}

double TailMajorant::tail_sum(std::size_t first) const {
  if (coefficient_ == 0.0) return 0.0;
  if (kind_ == Kind::InverseQuadratic) {
    // a/(s + x^2) is convex for x >= sqrt(s/3), so there term(n) is at most
    // its integral over [n - 1/2, n + 1/2]; otherwise use [n - 1, n].
    double root = std::sqrt(parameter_);
    if (first == 0) {
      return term(0) + tail_sum(1);
    }
    double lower = static_cast<double>(first) - 0.5;
    if (lower < std::sqrt(parameter_ / 3.0)) lower -= 0.5;
    return coefficient_ / root *
           (std::numbers::pi / 2.0 - std::atan(lower / root));
  }
  double q = parameter_;
  if (q <= 1.0) return kInf;
  // term(n) = a (1+n)^{-q} <= int_{n}^{n+1} a x^{-q} dx for n >= 1
  if (first == 0) return term(0) + tail_sum(1);
  double from = static_cast<double>(first);
  return coefficient_ * std::pow(from, 1.0 - q) / (q - 1.0);
}

SpectralSystem::SpectralSystem(DiagonalGenerator gen, Eigen::MatrixXcd control,
                               Eigen::MatrixXcd observation,
                               Eigen::MatrixXcd feedthrough,
                               std::optional<TailMajorant> tail, bool exact)
    : gen_(std::move(gen)),
      control_(std::move(control)),
      observation_(std::move(observation)),
      feedthrough_(std::move(feedthrough)),
      tail_(tail),
      exact_(exact) {
  const Eigen::Index n = gen_.size();
  if (control_.rows() != n || control_.cols() < 1) {
    throw SchemaError("control must be " + std::to_string(n) +
                      " x m with m >= 1, got " +
                      dims(control_.rows(), control_.cols()));
  }
  if (observation_.cols() != n || observation_.rows() < 1) {
    throw SchemaError("observation must be k x " + std::to_string(n) +
                      " with k >= 1, got " +
                      dims(observation_.rows(), observation_.cols()));
  }
  if (feedthrough_.rows() != observation_.rows() ||
      feedthrough_.cols() != control_.cols()) {
    throw SchemaError("feedthrough must be " +
                      dims(observation_.rows(), control_.cols()) + ", got " +
                      dims(feedthrough_.rows(), feedthrough_.cols()));
  }
  if (!control_.allFinite() || !observation_.allFinite() ||
      !feedthrough_.allFinite()) {
    throw SchemaError("system matrices contain non-finite entries");
  }
}

bool SpectralSystem::is_real() const {
  return (gen_.eigenvalues().imag().array() == 0.0).all() &&
         (control_.imag().array() == 0.0).all() &&
         (observation_.imag().array() == 0.0).all() &&
         (feedthrough_.imag().array() == 0.0).all();
}

SpectralSystem SpectralSystem::with_observation(
    Eigen::MatrixXcd observation) const {
  return SpectralSystem(gen_, control_, std::move(observation), feedthrough_,
                        tail_, exact_);
}

SpectralSystem SpectralSystem::with_tail(std::optional<TailMajorant> tail,
                                         bool exact) const {
  return SpectralSystem(gen_, control_, observation_, feedthrough_, tail,
                        exact);
}

SpectralSystem build_system(const SystemDescription& desc) {
  if (desc.builtin) {
    if (*desc.builtin != "heat") {
      throw SchemaError("unknown builtin system '" + *desc.builtin + "'");
    }
    if (desc.eigenvalues || desc.control || desc.observation ||
        desc.feedthrough) {
      throw SchemaError("builtin systems must not carry explicit arrays");
    }
    if (!desc.modes) throw SchemaError("builtin heat system needs `modes`");
    heat::HeatConfig cfg;
    cfg.modes = *desc.modes;
    cfg.shift = desc.shift.value_or(1.0);
    return heat::build_heat_system(cfg);
  }

  if (!desc.eigenvalues || !desc.control || !desc.observation) {
    throw SchemaError(
        "explicit systems need `eigenvalues`, `control` and `observation`");
  }
  const Eigen::Index n = desc.eigenvalues->size();
  if (desc.modes && *desc.modes != n) {
    throw SchemaError("`modes` = " + std::to_string(*desc.modes) +
                      " but " + std::to_string(n) + " eigenvalues given");
  }
  double shift = desc.shift.value_or(0.0);
  Eigen::VectorXcd shifted = desc.eigenvalues->array() - cplx(shift, 0.0);
  // Dimension problems are reported before stability problems.
  if (desc.control->rows() != n) {
    throw SchemaError("control has " + std::to_string(desc.control->rows()) +
                      " rows, expected " + std::to_string(n));
  }
  if (desc.observation->cols() != n) {
    throw SchemaError("observation has " +
                      std::to_string(desc.observation->cols()) +
                      " columns, expected " + std::to_string(n));
  }
  Eigen::MatrixXcd feed =
      desc.feedthrough.value_or(Eigen::MatrixXcd::Zero(
          desc.observation->rows(), desc.control->cols()));

  DiagonalGenerator gen =
      desc.stability
          ? DiagonalGenerator(std::move(shifted), shift, *desc.stability)
          : DiagonalGenerator::from_shifted(std::move(shifted), shift);
  return SpectralSystem(std::move(gen), *desc.control, *desc.observation,
                        std::move(feed), desc.tail, desc.exact);
}

CompatReport compatibility_check(const SpectralSystem& sys, cplx lambda,
                                 const CompatOptions& opts) {
  const auto& gen = sys.generator();
  if (!(lambda.real() > gen.bound().omega)) {
    throw DomainError("compatibility probe needs Re(lambda) > omega");
  }
  if (on_spectrum(gen, lambda)) {
    throw SpectrumError("compatibility probe lies on the spectrum");
  }
  const auto& a = gen.eigenvalues();
  return pairing_report(
      sys, lambda, [&](Eigen::Index n) { return std::abs(lambda - a[n]); },
      opts);
}

CompatReport uniform_compatibility_check(const SpectralSystem& sys,
                                         const CompatOptions& opts) {
  const auto& a = sys.generator().eigenvalues();
  return pairing_report(
      sys, cplx(0.0, 0.0),
      [&](Eigen::Index n) { return std::abs(a[n].real()); }, opts);
}

Eigen::MatrixXcd m13_truncated(const SpectralSystem& sys, cplx lambda) {
  const auto& a = sys.generator().eigenvalues();
  Eigen::VectorXcd weights(sys.modes());
  for (Eigen::Index n = 0; n < sys.modes(); ++n) {
    weights[n] = 1.0 / (lambda - a[n]);
  }
  return sys.observation() * weights.asDiagonal() * sys.control();
}

MultiplierValue m13_eval(const SpectralSystem& sys, double gamma) {
  cplx lambda(0.0, gamma);
  CompatReport rep;
  try {
    rep = compatibility_check(sys, lambda);
  } catch (const CertificateIncompleteError& e) {
    throw PreconditionError(std::string("m13 needs verified compatibility: ") +
                            e.what());
  }
  if (!rep.verdict) {
    throw PreconditionError("m13 needs verified compatibility: " + rep.reason);
  }
  return {m13_truncated(sys, lambda), rep.tail_bound};
}

double spectral_norm(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == 1 || m.cols() == 1) return m.norm();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

MultiplierReport m13_sup_scan(const SpectralSystem& sys, double gamma_max,
                              long steps, unsigned workers) {
  if (!(gamma_max > 0.0)) throw DomainError("gamma_max must be positive");
  if (steps < 2) throw DomainError("scan needs at least 2 grid points");

  CompatReport uniform;
  try {
    uniform = uniform_compatibility_check(sys);
  } catch (const CertificateIncompleteError& e) {
    throw PreconditionError(std::string("m13 scan needs verified "
                                        "compatibility: ") + e.what());
  }
  if (!uniform.verdict) {
    throw PreconditionError("m13 scan needs verified compatibility: " +
                            uniform.reason);
  }

  MultiplierReport rep;
  rep.gamma_max = gamma_max;
  rep.steps = steps;
  rep.truncated_bound = uniform.truncated_sum;
  // Per-channel tails are column norms of the remainder matrix; its spectral
  // norm is at most their l2 combination.
  rep.tail_bound = uniform.tail_bound / std::sqrt(static_cast<double>(sys.inputs()));
  rep.upper_bound = uniform.truncated_sum + rep.tail_bound;

  const auto count = static_cast<std::size_t>(steps);
  const double step = 2.0 * gamma_max / static_cast<double>(steps - 1);
  auto gamma_at = [&](std::size_t i) {
    // endpoints exact, symmetric grid
    if (i == count - 1) return gamma_max;
    return -gamma_max + step * static_cast<double>(i);
  };

  unsigned w = workers == 0 ? worker_count() : workers;
  std::vector<double> best(w, -1.0);
  std::vector<std::size_t> where(w, 0);
  parallel_chunks(
      count,
      [&](std::size_t begin, std::size_t end, unsigned id) {
        for (std::size_t i = begin; i < end; ++i) {
          double v = spectral_norm(m13_truncated(sys, cplx(0.0, gamma_at(i))));
          if (v > best[id]) {
            best[id] = v;
            where[id] = i;
          }
        }
      },
      w);
  // Chunks are ordered, so the first maximum wins regardless of timing.
  double sup = -1.0;
  std::size_t arg = 0;
  for (unsigned id = 0; id < w; ++id) {
    if (best[id] > sup) {
      sup = best[id];
      arg = where[id];
    }
  }
  rep.grid_sup = std::max(sup, 0.0);
  rep.argmax_gamma = gamma_at(arg);
  rep.pass = std::isfinite(rep.upper_bound) &&
             rep.grid_sup <= rep.upper_bound * (1.0 + 1e-12);
  return rep;
}

}  // namespace wellposed
