// One PASS/FAIL line per acceptance criterion.
//   wellposed_acceptance               all criteria
//   wellposed_acceptance --criterion N one criterion
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdarg>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wellposed/admissibility.hpp"
#include "wellposed/certificate.hpp"
#include "wellposed/heat.hpp"
#include "wellposed/laplace.hpp"
#include "wellposed/lax_phillips.hpp"

using namespace wellposed;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[1024];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

SpectralSystem heat_system(long modes, double shift = 1.0) {
  heat::HeatConfig cfg;
  cfg.modes = modes;
  cfg.shift = shift;
  return heat::build_heat_system(cfg);
}

SpectralSystem one_mode() {
  Eigen::MatrixXcd one = Eigen::MatrixXcd::Ones(1, 1);
  return SpectralSystem(DiagonalGenerator(Eigen::VectorXcd::Constant(1, -1.0), 0.0, {1.0, -1.0}),
                        one, one, Eigen::MatrixXcd::Zero(1, 1), std::nullopt, true);
}

// (4 sqrt 2 / pi) sum_{n=first}^{last} 1/(1+n^2), summed from the small end.
double series(long first, long last) {
  long double acc = 0.0L;
  for (long n = last; n >= first; --n) {
    long double nn = n;
    acc += 1.0L / (1.0L + nn * nn);
  }
  return static_cast<double>(acc * 4.0L * std::sqrt(2.0L) / std::numbers::pi_v<long double>);
}

Outcome criterion1() {
  auto start = std::chrono::steady_clock::now();
  Certificate c = heat::heat_certificate({});
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  double head = series(0, 63);
  // Remainder: explicit terms to 10^7 plus the integral bound beyond.
  double tail = series(64, 10000000) +
                4.0 * std::sqrt(2.0) / std::numbers::pi * (1.0 / 1e7);
  double ub = c.multiplier ? c.multiplier->upper_bound : INFINITY;
  bool ok = c.verdict == Verdict::WellPosed && ub <= head + tail && head + tail <= 3.7394 &&
            secs < 10.0;
  return {ok, fmt("verdict %s, upperBound %.6f <= series %.6f + tail %.6f = %.6f <= 3.7394, "
                  "%.2f s",
                  to_string(c.verdict).c_str(), ub, head, tail, head + tail, secs)};
}

Outcome criterion2() {
  SpectralSystem h = heat_system(64);
  MultiplierReport a = m13_sup_scan(h, 100.0, 4001);
  MultiplierReport b = m13_sup_scan(h, 100.0, 8001);
  double change = std::abs(a.grid_sup - b.grid_sup);
  bool ok = a.grid_sup <= a.upper_bound && b.grid_sup <= b.upper_bound && change < 1e-3;
  return {ok, fmt("gridSup %.9f (4001) / %.9f (8001) <= upperBound %.6f, change %.2e < 1e-3",
                  a.grid_sup, b.grid_sup, a.upper_bound, change)};
}

Outcome criterion3() {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::normal_distribution<double> N(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    long modes = 1 + trial % 8;
    SpectralSystem sys = heat_system(modes);
    Eigen::Index count = 2 + static_cast<Eigen::Index>(40 * U(rng));
    Eigen::MatrixXcd v(2, count);
    for (Eigen::Index i = 0; i < count; ++i) v.col(i) << N(rng), N(rng);
    Signal u(-0.2 + 0.5 * U(rng), 0.02 + 0.1 * U(rng), v);
    double t = 0.1 + 3.0 * U(rng);
    auto a = control_to_state(sys, t, u);
    auto b = control_to_state_ibp(sys, t, u);
    if (a.norm() > 0.0) worst = std::max(worst, (a - b).norm() / a.norm());
  }

  SpectralSystem sys = heat_system(8);
  std::vector<double> diffs;
  for (double dt : {4e-3, 2e-3, 1e-3}) {
    Signal u = Signal::sample(0.0, dt, grid_steps(2.0, dt) + 1, 2, [](double r) {
      Eigen::VectorXd w(2);
      w << r * r * std::exp(-r), 0.5 * r * r * std::exp(-2.0 * r);
      return w;
    });
    Signal y = input_output_map(sys, 2.0, u, dt);
    Signal z = input_output_map(sys, 2.0, u, dt, IoPath::IntegrationByParts);
    diffs.push_back((y.samples() - z.samples()).cwiseAbs().maxCoeff());
  }
  double r1 = diffs[0] / diffs[1], r2 = diffs[1] / diffs[2];
  bool ok = worst <= 1e-8 && r1 >= 3.3 && r1 <= 4.7 && r2 >= 3.3 && r2 <= 4.7;
  return {ok, fmt("control_to_state vs IBP worst rel %.2e <= 1e-8 (100 inputs, N<=8); "
                  "io-map direct vs IBP diffs %.2e %.2e %.2e, ratios %.3f %.3f in [3.3, 4.7]",
                  worst, diffs[0], diffs[1], diffs[2], r1, r2)};
}

Outcome criterion4() {
  bool ok = true;
  double worst_budget = 0.0, worst_ratio = 0.0;
  int checked = 0;
  for (const SpectralSystem& sys : {one_mode(), heat_system(16)}) {
    SpectralVector x = default_probe_state(sys);
    Signal u = default_probe_input(sys, 1e-3);
    for (cplx lambda : {cplx(1.0, 0.0), cplx(2.0, 0.0), cplx(1.0, 1.0)}) {
      ResolventResidualReport r = verify_resolvent_entries(sys, lambda, x, u);
      for (const EntryResidual* e : {&r.r12, &r.r23, &r.r13}) {
        ok = ok && e->pass && e->budget <= 1e-4;
        worst_budget = std::max(worst_budget, e->budget);
        worst_ratio = std::max(worst_ratio, e->residual / e->budget);
        ++checked;
      }
    }
  }
  return {ok, fmt("%d residuals within budget (max residual/budget %.3f), max budget %.2e <= 1e-4",
                  checked, worst_ratio, worst_budget)};
}

Outcome criterion5() {
  SpectralSystem sys = heat_system(16);
  std::vector<double> res;
  const std::vector<double> dts{4e-3, 2e-3, 1e-3};
  for (double dt : dts) {
    SpectralVector x = default_probe_state(sys);
    Signal u = Signal::sample(0.0, dt, grid_steps(1.6, dt) + 1, 2, [](double r) {
      Eigen::VectorXd w(2);
      w << std::sin(3.0 * r) + 0.5, std::exp(-r) * std::cos(7.0 * r);
      return w;
    });
    ExtendedState xs = make_extended_state(sys, 2.0, x, u);
    Eigen::MatrixXcd past = xs.past_output.samples();
    for (Eigen::Index i = 0; i < past.cols(); ++i) {
      double s = xs.past_output.time(i);
      if (s > -0.8) past(0, i) = std::cos(2.0 * s);
    }
    xs.past_output = Signal(xs.past_output.t0(), dt, past);
    res.push_back(semigroup_law_residual(sys, 0.7, 0.4, xs));
  }
  // At the rounding floor the law holds exactly and no rate is observable.
  const double floor = 1e-12;
  bool exact = res[0] <= floor && res[1] <= floor && res[2] <= floor;
  double r1 = res[0] / std::max(res[1], 1e-300), r2 = res[1] / std::max(res[2], 1e-300);
  bool rate = r1 >= 3.3 && r1 <= 4.7 && r2 >= 3.3 && r2 <= 4.7;
  bool bound = true;
  for (std::size_t k = 0; k < dts.size(); ++k) bound = bound && res[k] <= dts[k] * dts[k];
  return {(exact || rate) && bound,
          fmt("residuals %.2e %.2e %.2e at dt 4e-3 2e-3 1e-3, all <= dt^2; %s",
              res[0], res[1], res[2],
              exact ? "exact to rounding (<= 1e-12), rate not observable"
                    : fmt("ratios %.3f %.3f", r1, r2).c_str())};
}

// Simpson Gram int_0^t0 v v^* with v_n = conj(c_n e^{a_n s}).
Eigen::MatrixXcd quadrature_obs_gram(const SpectralSystem& sys, double t0, double h) {
  const long steps = std::lround(t0 / h);
  Eigen::VectorXcd a = sys.generator().eigenvalues().conjugate();
  Eigen::VectorXcd w = sys.observation().adjoint().col(0);
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(a.size(), a.size());
  for (long i = 0; i <= steps; ++i) {
    double s = static_cast<double>(i) * h;
    double wt = (i == 0 || i == steps) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    Eigen::VectorXcd v = ((a * s).array().exp() * w.array()).matrix();
    g += wt * v * v.adjoint();
  }
  return g * (h / 3.0);
}

Outcome criterion6() {
  bool ok = true;
  std::string detail = "brute-force rel err";
  std::string oracle = "quadrature-Gram rel err";
  std::mt19937_64 rng(6);
  std::normal_distribution<double> N(0.0, 1.0);
  for (long modes = 1; modes <= 4; ++modes) {
    SpectralSystem sys = heat_system(modes);
    double m_obs = observation_gram(sys, 1.0).constant;
    Eigen::MatrixXcd q = quadrature_obs_gram(sys, 1.0, 1e-4);
    double best = 0.0;
    for (int k = 0; k < 10000; ++k) {
      SpectralVector x(modes);
      // The Gram is real symmetric, so real directions attain the sup.
      for (long n = 0; n < modes; ++n) x[n] = N(rng);
      x /= x.norm();
      best = std::max(best, (x.adjoint() * q * x)(0).real());
    }
    double err = std::abs(best - m_obs) / m_obs;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(q, Eigen::EigenvaluesOnly);
    double oerr = std::abs(es.eigenvalues().maxCoeff() - m_obs) / m_obs;
    ok = ok && err <= 1e-6 && oerr <= 1e-6;
    detail += fmt(" N=%ld %.1e%s", modes, err, err <= 1e-6 ? "" : "(!)");
    oracle += fmt(" %.1e", oerr);
  }

  SpectralSystem h = heat_system(64);
  double bound = 0.0;
  for (int n = 0; n < 64; ++n) bound += 1.0 / (1.0 + n * n);
  bound /= std::numbers::pi;
  bool gram_bounds = true, uniform = true;
  for (double t0 : {0.1, 1.0, 10.0}) {
    double m_obs = observation_gram(h, t0).constant;
    double m_ctl = control_gram(h, t0).constant;
    gram_bounds = gram_bounds && m_obs <= bound && m_ctl * m_ctl <= bound;
    GlobalConstants g = global_constants(m_obs, m_ctl, 0.0, h.generator().bound(), 2.0, t0);
    for (double t : {2.0 * t0, 10.0 * t0}) {
      uniform = uniform && observation_gram(h, t).constant <= g.M_C &&
                control_gram(h, t).constant <= g.M_B;
    }
  }
  ok = ok && gram_bounds && uniform;
  return {ok, detail + "; " + oracle + fmt("; heat Gram bounds %s; t-uniform globals %s",
                                            gram_bounds ? "hold" : "FAIL",
                                            uniform ? "hold" : "FAIL")};
}

Outcome criterion7() {
  heat::HeatConfig a, b;
  b.shift = 2.0;
  Certificate ca = heat::heat_certificate(a);
  Certificate cb = heat::heat_certificate(b);
  bool ok = ca.verdict == Verdict::WellPosed && cb.verdict == Verdict::WellPosed;
  return {ok, fmt("shift 1: %s (M_BC %.4f), shift 2: %s (M_BC %.4f)",
                  to_string(ca.verdict).c_str(), ca.admissibility->globals.M_BC,
                  to_string(cb.verdict).c_str(), cb.admissibility->globals.M_BC)};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"heat certification", criterion1},
      {"multiplier bound", criterion2},
      {"oracle equivalence", criterion3},
      {"resolvent/Laplace consistency", criterion4},
      {"semigroup law", criterion5},
      {"admissibility constants", criterion6},
      {"rescaling invariance", criterion7},
  };
  int only = 0;
  if (argc == 3 && std::strcmp(argv[1], "--criterion") == 0) only = std::atoi(argv[2]);
  if (argc != 1 && (only < 1 || only > static_cast<int>(criteria.size()))) {
    std::fprintf(stderr, "usage: %s [--criterion 1..%zu]\n", argv[0], criteria.size());
    return 64;
  }
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i) + 1 != only) continue;
    Outcome o = criteria[i].second();
    all = all && o.pass;
    std::printf("[%s] %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
