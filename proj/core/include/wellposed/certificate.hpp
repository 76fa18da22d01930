#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wellposed/admissibility.hpp"
#include "wellposed/laplace.hpp"
#include "wellposed/system.hpp"

namespace wellposed {

struct CertifyOptions {
  double p = 2.0;
  // Allows p != 2: same p = 2 numbers, no verdict.
  bool exploratory = false;
  double t0 = 1.0;
  double gamma_max = 100.0;
  long gamma_steps = 4001;
  std::vector<cplx> lambda_probes{cplx(1.0, 0.0), cplx(2.0, 0.0),
                                  cplx(1.0, 1.0)};
  double dt = 1e-3;
  double horizon = 40.0;
  CompatOptions compat;
  unsigned workers = 0;
  // Stated estimate of the neglected modes' share of the Gram constants.
  std::optional<double> admissibility_tail_estimate;
};

enum class Verdict { WellPosed, NotCertified, Exploratory };

std::string to_string(Verdict v);

struct Certificate {
  std::string system_digest;
  double p = 2.0;
  double shift = 0.0;
  std::vector<CompatReport> compat;  // one per probe
  CompatReport compat_uniform;       // imaginary axis
  std::optional<MultiplierReport> multiplier;
  std::optional<AdmissibilityReport> admissibility;
  std::vector<ResolventResidualReport> residuals;
  Verdict verdict = Verdict::NotCertified;
  // Failing components, empty iff every check passed.
  std::vector<std::string> failures;
  std::map<std::string, double> tolerance_ledger;
  std::vector<std::string> notes;
};

// 64-bit FNV-1a of the text as 16 hex digits.
std::string content_digest(const std::string& text);

// Default verification data: x_n = (-1)^n / (1 + n^2) and a C^1 bump
// u_j(r) = (16 / L^4) r^2 (L - r)^2 / (1 + j) on [0, L], L = 4.
SpectralVector default_probe_state(const SpectralSystem& sys);
Signal default_probe_input(const SpectralSystem& sys, double dt);

// Runs compatibility (per probe and uniformly on the imaginary axis), the
// multiplier scan, the Gram constants and the resolvent residuals.
// `canonical_text` is hashed into the digest. Throws DomainError for p != 2
// without `exploratory` and CertificateIncompleteError when the system has
// neither a tail majorant nor an exact truncation.
Certificate certify(const SpectralSystem& sys, const CertifyOptions& opts,
                    const std::string& canonical_text);

// Pretty-printed JSON, byte-stable for identical inputs.
std::string certificate_to_json(const Certificate& cert);

}  // namespace wellposed
