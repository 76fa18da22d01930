#include "wellposed/certificate.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>

#include "json.hpp"

#include "wellposed/errors.hpp"

namespace wellposed {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json complex_json(cplx z) { return ordered_json::array({z.real(), z.imag()}); }

// Infinities are not JSON; keep them readable.
ordered_json real_json(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

ordered_json compat_json(const CompatReport& c) {
  ordered_json j;
  j["lambdaProbe"] = complex_json(c.lambda_probe);
  j["truncatedSum"] = real_json(c.truncated_sum);
  j["tailBound"] = real_json(c.tail_bound);
  j["tolerance"] = real_json(c.tolerance);
  j["verdict"] = c.verdict;
  if (!c.reason.empty()) j["reason"] = c.reason;
  return j;
}

ordered_json entry_json(const EntryResidual& e) {
  ordered_json j;
  j["residual"] = real_json(e.residual);
  j["quadratureBudget"] = real_json(e.quadrature_budget);
  j["tailBudget"] = real_json(e.tail_budget);
  j["budget"] = real_json(e.budget);
  j["pass"] = e.pass;
  return j;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::WellPosed:
      return "WELL_POSED";
    case Verdict::NotCertified:
      return "NOT_CERTIFIED";
    case Verdict::Exploratory:
      return "EXPLORATORY";
  }
  return "NOT_CERTIFIED";
}

std::string content_digest(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

SpectralVector default_probe_state(const SpectralSystem& sys) {
  SpectralVector x(sys.modes());
  for (Eigen::Index n = 0; n < sys.modes(); ++n) {
    double nn = static_cast<double>(n);
    x[n] = (n % 2 == 0 ? 1.0 : -1.0) / (1.0 + nn * nn);
  }
  return x;
}

Signal default_probe_input(const SpectralSystem& sys, double dt) {
  constexpr double L = 4.0;
  const Eigen::Index count = grid_steps(L, dt) + 1;
  const Eigen::Index m = sys.inputs();
  return Signal::sample(0.0, dt, count, m, [&](double r) {
    double bump = 16.0 * r * r * (L - r) * (L - r) / (L * L * L * L);
    Eigen::VectorXd v(m);
    for (Eigen::Index j = 0; j < m; ++j) {
      v[j] = bump / (1.0 + static_cast<double>(j));
    }
    return v;
  });
}

Certificate certify(const SpectralSystem& sys, const CertifyOptions& opts,
                    const std::string& canonical_text) {
  if (opts.p != 2.0 && !opts.exploratory) {
    throw DomainError("certificates are issued for p = 2 only; pass "
                      "--exploratory for other p");
  }
  if (!(opts.p >= 1.0)) throw DomainError("p must be >= 1");
  if (!sys.exact() && !sys.tail()) {
    throw CertificateIncompleteError(
        "certification needs a tail majorant or an exact truncation");
  }

  Certificate cert;
  cert.system_digest = content_digest(canonical_text);
  cert.p = opts.p;
  cert.shift = sys.generator().shift();

  bool compat_ok = true;
  for (cplx lambda : opts.lambda_probes) {
    CompatReport r = compatibility_check(sys, lambda, opts.compat);
    compat_ok = compat_ok && r.verdict;
    if (!r.verdict) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "compatibility at lambda = %g%+gi",
                    lambda.real(), lambda.imag());
      cert.failures.push_back(std::string(buf) + ": " + r.reason);
    }
    cert.compat.push_back(std::move(r));
  }
  cert.compat_uniform = uniform_compatibility_check(sys, opts.compat);
  if (!cert.compat_uniform.verdict) {
    compat_ok = false;
    cert.failures.push_back("compatibility on the imaginary axis: " +
                            cert.compat_uniform.reason);
  }

  if (cert.compat_uniform.verdict) {
    cert.multiplier =
        m13_sup_scan(sys, opts.gamma_max, opts.gamma_steps, opts.workers);
    if (!cert.multiplier->pass) {
      cert.failures.push_back("multiplier: grid sup exceeds the upper bound");
    }
    cert.admissibility =
        admissibility_report(sys, opts.t0, *cert.multiplier, opts.workers);
    cert.admissibility->tail_estimate = opts.admissibility_tail_estimate;
    if (!std::isfinite(cert.admissibility->globals.M_BC)) {
      cert.failures.push_back("admissibility: constants not finite");
    }
  } else {
    cert.failures.push_back(
        "multiplier: skipped, compatibility not verified on the imaginary axis");
  }

  VerifyOptions vo;
  vo.dt = opts.dt;
  vo.horizon = opts.horizon;
  SpectralVector x = default_probe_state(sys);
  Signal u = default_probe_input(sys, opts.dt);
  for (cplx lambda : opts.lambda_probes) {
    ResolventResidualReport r = verify_resolvent_entries(sys, lambda, x, u, vo);
    if (!r.pass) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "resolvent residuals at lambda = %g%+gi",
                    lambda.real(), lambda.imag());
      cert.failures.push_back(buf);
    }
    cert.residuals.push_back(std::move(r));
  }

  if (opts.p != 2.0) {
    cert.verdict = Verdict::Exploratory;
  } else {
    cert.verdict = cert.failures.empty() && compat_ok ? Verdict::WellPosed
                                                      : Verdict::NotCertified;
  }

  cert.tolerance_ledger = {
      {"compat.tailTolerance", opts.compat.tail_tolerance},
      {"multiplier.gammaMax", opts.gamma_max},
      {"multiplier.steps", static_cast<double>(opts.gamma_steps)},
      {"multiplier.sandwichSlack", 1e-12},
      {"laplace.dt", opts.dt},
      {"laplace.horizon", opts.horizon},
      {"laplace.roundingFloor", 1e-12},
      {"grid.snapRelative", 1e-9},
      {"spectrum.relative", 1e-14},
      {"smoothPath.derivativeAtZero", 1e-3},
      {"admissibility.t0", opts.t0},
  };

  cert.notes = {
      "multiplier norm reported as the interval [gridSup, upperBound]; "
      "values between grid points are covered only by the upper bound",
      "resolvent identities checked at finitely many probes, not on a half-line",
      "product norm on the extended state space: max of component norms",
      "M_BC uses the normalisation t0 = 1",
      "eigenvalues reported after the shift; original spectrum = shifted + shift",
  };
  if (opts.admissibility_tail_estimate) {
    cert.notes.emplace_back(
        "admissibility tail estimate is stated, not rigorous");
  }
  if (cert.verdict == Verdict::Exploratory) {
    cert.notes.emplace_back(
        "exploratory run: numbers computed at p = 2, no verdict for this p");
  }
  return cert;
}

std::string certificate_to_json(const Certificate& cert) {
  ordered_json j;
  j["systemDigest"] = cert.system_digest;
  j["p"] = cert.p;
  j["shift"] = cert.shift;
  if (cert.verdict == Verdict::Exploratory) {
    j["verdict"] = nullptr;
    j["mode"] = "EXPLORATORY";
  } else {
    j["verdict"] = to_string(cert.verdict);
  }
  j["failures"] = cert.failures;

  ordered_json compat;
  compat["probes"] = ordered_json::array();
  for (const auto& c : cert.compat) compat["probes"].push_back(compat_json(c));
  compat["imaginaryAxis"] = compat_json(cert.compat_uniform);
  j["compat"] = compat;

  if (cert.multiplier) {
    const auto& m = *cert.multiplier;
    ordered_json mj;
    mj["gridSup"] = real_json(m.grid_sup);
    mj["argmaxGamma"] = m.argmax_gamma;
    mj["upperBound"] = real_json(m.upper_bound);
    mj["truncatedBound"] = real_json(m.truncated_bound);
    mj["tailBound"] = real_json(m.tail_bound);
    mj["gammaMax"] = m.gamma_max;
    mj["steps"] = m.steps;
    mj["pass"] = m.pass;
    j["multiplier"] = mj;
  } else {
    j["multiplier"] = nullptr;
  }

  if (cert.admissibility) {
    const auto& a = *cert.admissibility;
    ordered_json aj;
    aj["t0"] = a.t0;
    aj["p"] = a.p;
    aj["observationConstant"] = real_json(a.M_obs);
    aj["controlConstant"] = real_json(a.M_ctl);
    aj["pairConstant"] = {{"lower", real_json(a.M_pair.lower)},
                          {"upper", real_json(a.M_pair.upper)}};
    aj["globals"] = {{"M_C", real_json(a.globals.M_C)},
                     {"M_B", real_json(a.globals.M_B)},
                     {"M_BC", real_json(a.globals.M_BC)},
                     {"M_BC_power", real_json(a.globals.M_BC_power)},
                     {"M_BC_t0", 1.0}};
    aj["K"] = a.bound.K;
    aj["omega"] = a.bound.omega;
    if (a.tail_estimate) {
      aj["tailEstimate"] = *a.tail_estimate;
    } else {
      aj["tailEstimate"] = nullptr;
    }
    j["admissibility"] = aj;
  } else {
    j["admissibility"] = nullptr;
  }

  ordered_json res = ordered_json::array();
  for (const auto& r : cert.residuals) {
    ordered_json rj;
    rj["lambda"] = complex_json(r.lambda);
    rj["r12"] = entry_json(r.r12);
    rj["r23"] = entry_json(r.r23);
    rj["r13"] = entry_json(r.r13);
    rj["pass"] = r.pass;
    res.push_back(rj);
  }
  j["resolventResiduals"] = res;

  ordered_json ledger;
  for (const auto& [k, v] : cert.tolerance_ledger) ledger[k] = v;
  j["toleranceLedger"] = ledger;
  j["notes"] = cert.notes;
  return j.dump(2) + "\n";
}

}  // namespace wellposed
