#include "wellposed_cli/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "wellposed/certificate.hpp"
#include "wellposed/errors.hpp"
#include "wellposed/heat.hpp"
#include "wellposed/io.hpp"
#include "wellposed/lax_phillips.hpp"

namespace wellposed::cli {

namespace fs = std::filesystem;

namespace {

struct SystemArgs {
  std::string system_path;
  std::string builtin;
  long modes = 64;
  std::optional<double> shift;
};

struct CertifyArgs {
  double p = 2.0;
  bool exploratory = false;
  double t0 = 1.0;
  double gamma_max = 100.0;
  long gamma_steps = 4001;
  std::string lambda_probes = "1,2,1+1i";
  double dt = 1e-3;
  std::string out = ".";
};

struct SimulateArgs {
  double dt = 1e-3;
  double t = 0.0;
  std::optional<double> window;
  std::string input;
  std::string initial;
  std::string out = ".";
  long profile_points = 101;
};

void add_system_flags(CLI::App* app, SystemArgs& a) {
  auto* sys = app->add_option("--system", a.system_path, "JSON system description");
  auto* bi = app->add_option("--builtin", a.builtin, "Built-in system (heat)")
                 ->check(CLI::IsMember({"heat"}));
  sys->excludes(bi);
  app->add_option("--modes", a.modes, "Modes of the built-in system")
      ->check(CLI::PositiveNumber);
  app->add_option("--shift", a.shift, "Stabilising shift lambda0");
}

// System plus the text hashed into the certificate digest.
std::pair<SpectralSystem, std::string> load_system(const SystemArgs& a) {
  if (!a.system_path.empty()) {
    ParsedSystem parsed = read_system_description(a.system_path);
    if (a.shift) {
      parsed.description.shift = a.shift;
      parsed.canonical += "|shift=" + format_double(*a.shift);
    }
    return {build_system(parsed.description), parsed.canonical};
  }
  if (a.builtin.empty()) {
    throw SchemaError("one of --system or --builtin is required");
  }
  SystemDescription d;
  d.builtin = a.builtin;
  d.modes = a.modes;
  d.shift = a.shift;
  std::string canonical = "{\"builtin\":\"heat\",\"modes\":" +
                          std::to_string(a.modes) + ",\"shift\":" +
                          format_double(a.shift.value_or(1.0)) + "}";
  return {build_system(d), canonical};
}

int run_certify(const SystemArgs& sa, const CertifyArgs& ca, std::ostream& out) {
  auto [sys, canonical] = load_system(sa);
  CertifyOptions opts;
  opts.p = ca.p;
  opts.exploratory = ca.exploratory;
  opts.t0 = ca.t0;
  opts.gamma_max = ca.gamma_max;
  opts.gamma_steps = ca.gamma_steps;
  opts.dt = ca.dt;
  try {
    opts.lambda_probes = parse_complex_list(ca.lambda_probes);
  } catch (const std::invalid_argument& e) {
    throw SchemaError(std::string("--lambda-probes: ") + e.what());
  }
  if (!sa.builtin.empty()) {
    heat::HeatConfig cfg;
    cfg.modes = sa.modes;
    cfg.shift = sa.shift.value_or(1.0);
    opts.admissibility_tail_estimate = heat::admissibility_tail_estimate(cfg);
  }
  Certificate cert = certify(sys, opts, canonical);

  fs::create_directories(ca.out);
  fs::path path = fs::path(ca.out) / "certificate.json";
  std::ofstream file(path, std::ios::binary);
  if (!file) throw SchemaError("cannot write " + path.string());
  file << certificate_to_json(cert);

  out << "verdict: " << to_string(cert.verdict) << "\n";
  if (cert.multiplier) {
    out << "multiplier: gridSup " << format_double(cert.multiplier->grid_sup)
        << ", upperBound " << format_double(cert.multiplier->upper_bound) << "\n";
  }
  for (const auto& f : cert.failures) out << "failed: " << f << "\n";
  out << "certificate: " << path.string() << "\n";
  return cert.verdict == Verdict::WellPosed ? 0 : 2;
}

// Input resampled on [0, end] with the simulation step.
Signal resample_input(const Signal& u, double dt) {
  double end = std::max(0.0, u.t_end());
  Eigen::Index count = static_cast<Eigen::Index>(std::ceil(end / dt - 1e-9)) + 1;
  return Signal::sample(0.0, dt, count, u.dim(),
                        [&](double t) { return u(t); });
}

int run_simulate(const SystemArgs& sa, const SimulateArgs& ma, std::ostream& out) {
  auto [sys, canonical] = load_system(sa);
  (void)canonical;
  const double dt = ma.dt;
  const double window = ma.window.value_or(ma.t);
  Eigen::Index steps = grid_steps(ma.t, dt);

  ExtendedState xs = [&] {
    if (!ma.initial.empty()) {
      ExtendedState read = read_extended_state(ma.initial);
      // An explicit larger window pads the stored past output with zeros.
      const Signal& past = read.past_output;
      Eigen::Index want = grid_steps(window, past.dt()) + 1;
      if (ma.window && want > past.size()) {
        Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(past.dim(), want);
        v.rightCols(past.size()) = past.samples();
        read.past_output = Signal(-static_cast<double>(want - 1) * past.dt(), past.dt(), v);
      }
      return read;
    }
    Signal u = Signal::zeros(0.0, dt, steps + 1, sys.inputs());
    return make_extended_state(sys, window, SpectralVector::Zero(sys.modes()), u);
  }();
  if (!ma.input.empty()) {
    Signal raw = read_signal_csv(ma.input, dt);
    xs.future_input = resample_input(raw, xs.future_input.dt());
  }
  if (std::abs(xs.future_input.dt() - dt) > 1e-12 * dt) {
    throw SchemaError("--dt does not match the step of the initial state");
  }

  Eigen::MatrixXcd traj = state_trajectory(sys, xs.state, xs.future_input, dt, steps);
  ExtendedState final_state = [&] {
    try {
      return step_extended_state(sys, ma.t, xs);
    } catch (const HorizonError& e) {
      throw HorizonError(std::string(e.what()) + " (increase --window)");
    }
  }();

  fs::create_directories(ma.out);
  fs::path dir(ma.out);
  write_signal_csv(dir / "state_trajectory.csv", Signal(0.0, dt, traj), "time", "x");
  write_signal_csv(dir / "past_output.csv", final_state.past_output, "time", "y");
  write_extended_state(dir / "final_state.json", final_state);
  if (!sa.builtin.empty()) {
    std::vector<double> grid(static_cast<std::size_t>(ma.profile_points));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      grid[i] = std::numbers::pi * static_cast<double>(i) /
                static_cast<double>(grid.size() - 1);
    }
    auto profile = heat::reconstruct_temperature(final_state.state, grid);
    std::ofstream prof(dir / "temperature_profile.csv", std::ios::binary);
    prof << "s,temperature\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
      prof << format_double(grid[i]) << ',' << format_double(profile[i]) << '\n';
    }
  }
  out << "simulated " << steps << " steps of " << format_double(dt) << "\n";
  out << "outputs: " << dir.string() << "\n";
  return 0;
}

}  // namespace

std::vector<std::complex<double>> parse_complex_list(const std::string& text) {
  std::vector<std::complex<double>> out;
  std::stringstream ss(text);
  std::string tok;
  auto to_double = [](const std::string& s) {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("bad number '" + s + "'");
    return v;
  };
  while (std::getline(ss, tok, ',')) {
    std::string t;
    for (char ch : tok) {
      if (!std::isspace(static_cast<unsigned char>(ch))) t += ch;
    }
    if (t.empty()) throw std::invalid_argument("empty probe");
    try {
      if (t.back() != 'i' && t.back() != 'j') {
        out.emplace_back(to_double(t), 0.0);
        continue;
      }
      t.pop_back();
      // Split at the last sign that is not an exponent sign.
      std::size_t split = std::string::npos;
      for (std::size_t i = t.size(); i-- > 1;) {
        if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
          split = i;
          break;
        }
      }
      std::string re = split == std::string::npos ? "" : t.substr(0, split);
      std::string im = split == std::string::npos ? t : t.substr(split);
      double imv = (im.empty() || im == "+") ? 1.0 : im == "-" ? -1.0 : to_double(im);
      out.emplace_back(re.empty() ? 0.0 : to_double(re), imv);
    } catch (const std::logic_error&) {
      throw std::invalid_argument("cannot parse probe '" + tok + "'");
    }
  }
  if (out.empty()) throw std::invalid_argument("no probes given");
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lax-Phillips simulation and p = 2 well-posedness certificates"};
  app.require_subcommand(1);

  SystemArgs cert_sys, sim_sys;
  CertifyArgs ca;
  SimulateArgs ma;

  auto* certify_cmd = app.add_subcommand("certify", "Write a well-posedness certificate");
  add_system_flags(certify_cmd, cert_sys);
  certify_cmd->add_option("--p", ca.p, "Exponent p");
  certify_cmd->add_flag("--exploratory", ca.exploratory, "Allow p != 2 without a verdict");
  certify_cmd->add_option("--t0", ca.t0, "Admissibility horizon")->check(CLI::PositiveNumber);
  certify_cmd->add_option("--gamma-max", ca.gamma_max, "Multiplier scan half-width")
      ->check(CLI::PositiveNumber);
  certify_cmd->add_option("--gamma-steps", ca.gamma_steps, "Multiplier scan points")
      ->check(CLI::Range(2L, 100000000L));
  certify_cmd->add_option("--lambda-probes", ca.lambda_probes,
                          "Comma-separated probes, e.g. 1,2,1+1i");
  certify_cmd->add_option("--dt", ca.dt, "Grid step for resolvent checks")
      ->check(CLI::PositiveNumber);
  certify_cmd->add_option("--out", ca.out, "Output directory");

  auto* simulate_cmd = app.add_subcommand("simulate", "Step the extended state");
  add_system_flags(simulate_cmd, sim_sys);
  simulate_cmd->add_option("--dt", ma.dt, "Grid step")->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--t", ma.t, "Simulated time")->required()
      ->check(CLI::NonNegativeNumber);
  simulate_cmd->add_option("--window", ma.window, "Past-output window (default --t)")
      ->check(CLI::NonNegativeNumber);
  simulate_cmd->add_option("--input", ma.input, "Input CSV (time,u0,...)");
  simulate_cmd->add_option("--initial", ma.initial, "Extended-state JSON envelope");
  simulate_cmd->add_option("--out", ma.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (*certify_cmd) return run_certify(cert_sys, ca, out);
    return run_simulate(sim_sys, ma, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace wellposed::cli
