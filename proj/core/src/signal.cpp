#include "wellposed/signal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include "wellposed/errors.hpp"

namespace wellposed {

namespace {

// Fractional grid position of t, snapped to the nearest node when within
// 1e-9 of it so that node values are reproduced exactly.
double grid_position(double t, double t0, double dt) {
  double p = (t - t0) / dt;
  double r = std::round(p);
  if (std::abs(p - r) <= 1e-9) return r;
  return p;
}

}  // namespace

Signal::Signal(double t0, double dt, Eigen::MatrixXcd samples)
    : t0_(t0), dt_(dt), samples_(std::move(samples)) {
  if (!(dt_ > 0.0) || !std::isfinite(dt_)) {
    throw DomainError("signal step dt must be positive");
  }
  if (!std::isfinite(t0_)) throw DomainError("signal start must be finite");
  if (samples_.cols() < 1) {
    throw DimensionError("signal needs at least one sample");
  }
  if (samples_.rows() < 1) {
    throw DimensionError("signal samples need dimension >= 1");
  }
  if (!samples_.allFinite()) {
    throw DomainError("signal contains non-finite samples");
  }
}

Signal Signal::zeros(double t0, double dt, Eigen::Index count,
                     Eigen::Index dim) {
  return Signal(t0, dt, Eigen::MatrixXcd::Zero(dim, count));
}

Eigen::VectorXcd Signal::operator()(double t) const {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim());
  double p = grid_position(t, t0_, dt_);
  double last = static_cast<double>(size() - 1);
  if (p < 0.0 || p > last) return out;
  auto k = static_cast<Eigen::Index>(std::floor(p));
  if (k >= size() - 1) return samples_.col(size() - 1);
  double w = p - static_cast<double>(k);
  if (w == 0.0) return samples_.col(k);
  return (1.0 - w) * samples_.col(k) + w * samples_.col(k + 1);
}

cplx Signal::value(double t, Eigen::Index channel) const {
  double p = grid_position(t, t0_, dt_);
  double last = static_cast<double>(size() - 1);
  if (p < 0.0 || p > last) return {0.0, 0.0};
  auto k = static_cast<Eigen::Index>(std::floor(p));
  if (k >= size() - 1) return samples_(channel, size() - 1);
  double w = p - static_cast<double>(k);
  if (w == 0.0) return samples_(channel, k);
  return (1.0 - w) * samples_(channel, k) + w * samples_(channel, k + 1);
}

Signal Signal::scaled(cplx factor) const {
  return Signal(t0_, dt_, samples_ * factor);
}

Signal Signal::translated(double delta) const {
  return Signal(t0_ + delta, dt_, samples_);
}

bool Signal::is_real() const {
  return (samples_.imag().array() == 0.0).all();
}

LinearExpMoments linear_exp_moments(cplx z) {
  double az = std::abs(z);
  if (az < 0.5) {
    // phi1 = sum z^k/(k+1)!, psi = sum z^k/(k! (k+2))
    cplx phi1 = 0.0;
    cplx psi = 0.0;
    cplx term = 1.0;  // z^k / k!
    for (int k = 0; k < 40; ++k) {
      cplx a = term / static_cast<double>(k + 1);
      cplx b = term / static_cast<double>(k + 2);
      phi1 += a;
      psi += b;
      if (std::abs(b) < 1e-18 * std::abs(psi)) break;
      term *= z / static_cast<double>(k + 1);
    }
    return {phi1, psi};
  }
  cplx ez = std::exp(z);
  return {(ez - 1.0) / z, (ez * (z - 1.0) + 1.0) / (z * z)};
}

std::pair<cplx, cplx> segment_weights(cplx alpha, double T, double r0,
                                      double r1) {
  if (!(r0 < r1)) throw DomainError("segment needs r0 < r1");
  double h = r1 - r0;
  cplx z = alpha * h;
  cplx decay = std::exp(alpha * (T - r1));
  // With v = (r1 - r)/h the integrand is e^{alpha(T-r1)} e^{z v} times
  // u1 (1 - v) + u0 v.
  LinearExpMoments m = linear_exp_moments(z);
  return {decay * h * m.psi, decay * h * (m.phi1 - m.psi)};
}

cplx exp_segment_integral(cplx alpha, double T, double r0, double r1, cplx u0,
                          cplx u1) {
  auto [w0, w1] = segment_weights(alpha, T, r0, r1);
  return w0 * u0 + w1 * u1;
}

Eigen::VectorXcd exp_kernel_integral(cplx alpha, double T, double a, double b,
                                     const Signal& u) {
  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(u.dim());
  double lo = std::max(a, u.t0());
  double hi = std::min(b, u.t_end());
  if (!(lo < hi)) return acc;

  const double tiny = 1e-12 * u.dt();
  double p = grid_position(lo, u.t0(), u.dt());
  auto k = static_cast<Eigen::Index>(std::floor(p));
  const auto& s = u.samples();
  for (; k < u.size() - 1; ++k) {
    double seg0 = u.time(k);
    double seg1 = u.time(k + 1);
    double r0 = std::max(lo, seg0);
    double r1 = std::min(hi, seg1);
    if (r0 >= hi) break;
    if (r1 - r0 <= tiny) continue;
    double w_start = (r0 - seg0) / u.dt();
    double w_end = (r1 - seg0) / u.dt();
    Eigen::VectorXcd v0 = (1.0 - w_start) * s.col(k) + w_start * s.col(k + 1);
    Eigen::VectorXcd v1 = (1.0 - w_end) * s.col(k) + w_end * s.col(k + 1);
    auto [c0, c1] = segment_weights(alpha, T, r0, r1);
    acc += c0 * v0 + c1 * v1;
  }
  return acc;
}

double lp_norm(const Signal& s, double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw DomainError("lp_norm needs 1 <= p < inf");
  }
  const auto& v = s.samples();
  const double h = s.dt();
  double total = 0.0;
  if (p == 2.0) {
    for (Eigen::Index k = 0; k + 1 < s.size(); ++k) {
      double a = v.col(k).squaredNorm();
      double b = v.col(k + 1).squaredNorm();
      double cross = v.col(k).dot(v.col(k + 1)).real();
      total += h * (a + cross + b) / 3.0;
    }
    return std::sqrt(total);
  }
  constexpr int panels = 8;
  for (Eigen::Index k = 0; k + 1 < s.size(); ++k) {
    auto at = [&](double w) {
      return std::pow(((1.0 - w) * v.col(k) + w * v.col(k + 1)).norm(), p);
    };
    double sub = h / panels;
    for (int j = 0; j < panels; ++j) {
      double w0 = static_cast<double>(j) / panels;
      double w1 = static_cast<double>(j + 1) / panels;
      total += sub / 6.0 * (at(w0) + 4.0 * at(0.5 * (w0 + w1)) + at(w1));
    }
  }
  return std::pow(total, 1.0 / p);
}

Eigen::Index grid_steps(double t, double dt) {
  if (!(t >= 0.0)) throw DomainError("time horizon must be >= 0");
  if (!(dt > 0.0)) throw DomainError("grid step must be positive");
  double q = t / dt;
  double r = std::round(q);
  if (std::abs(q - r) > 1e-9 * std::max(1.0, q)) {
    throw DomainError("time " + format_double(t) +
                      " is not a multiple of the grid step " +
                      format_double(dt));
  }
  return static_cast<Eigen::Index>(r);
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) {
      cell.pop_back();
    }
    while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
    out.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& cell, std::size_t row) {
  try {
    std::size_t used = 0;
    double v = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument(cell);
    return v;
  } catch (const std::exception&) {
    throw SchemaError("CSV row " + std::to_string(row) +
                      ": cannot parse number '" + cell + "'");
  }
}

}  // namespace

Signal read_signal_csv(std::istream& in, double fallback_dt) {
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("CSV is empty");
  auto header = split_csv_line(line);
  if (header.size() < 2 || header[0] != "time") {
    throw SchemaError("CSV header must be `time,c0,c1,...`");
  }
  // Map each column to (channel, is_imaginary).
  std::vector<std::string> names(header.begin() + 1, header.end());
  std::map<std::string, Eigen::Index> channel_of;
  std::vector<std::pair<Eigen::Index, bool>> role(names.size());
  Eigen::Index channels = 0;
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto& nm = names[i];
    if (nm.size() > 3 && nm.compare(nm.size() - 3, 3, "_im") == 0) continue;
    channel_of[nm] = channels;
    role[i] = {channels++, false};
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto& nm = names[i];
    if (nm.size() > 3 && nm.compare(nm.size() - 3, 3, "_im") == 0) {
      auto it = channel_of.find(nm.substr(0, nm.size() - 3));
      if (it == channel_of.end()) {
        throw SchemaError("CSV column '" + nm + "' has no real counterpart");
      }
      role[i] = {it->second, true};
    }
  }
  if (channels == 0) throw SchemaError("CSV has no data columns");

  std::vector<double> times;
  std::vector<Eigen::VectorXcd> rows;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw SchemaError("CSV row " + std::to_string(row) + " has " +
                        std::to_string(cells.size()) + " cells, expected " +
                        std::to_string(header.size()));
    }
    times.push_back(parse_number(cells[0], row));
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(channels);
    for (std::size_t i = 0; i < names.size(); ++i) {
      double x = parse_number(cells[i + 1], row);
      auto [ch, imag] = role[i];
      if (imag) {
        v[ch] = cplx(v[ch].real(), x);
      } else {
        v[ch] = cplx(x, v[ch].imag());
      }
    }
    rows.push_back(std::move(v));
  }
  if (rows.empty()) throw SchemaError("CSV has no data rows");

  double dt = fallback_dt;
  if (times.size() >= 2) {
    dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
    if (!(dt > 0.0)) throw SchemaError("CSV times must be strictly increasing");
    for (std::size_t i = 1; i < times.size(); ++i) {
      double step = times[i] - times[i - 1];
      if (!(step > 0.0) || std::abs(step - dt) > 1e-9 * dt) {
        throw SchemaError("CSV time step is not uniform at row " +
                          std::to_string(i + 2));
      }
    }
  }
  Eigen::MatrixXcd samples(channels, static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    samples.col(static_cast<Eigen::Index>(i)) = rows[i];
  }
  return Signal(times.front(), dt, std::move(samples));
}

Signal read_signal_csv(const std::filesystem::path& path, double fallback_dt) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open CSV file " + path.string());
  return read_signal_csv(in, fallback_dt);
}

void write_signal_csv(std::ostream& out, const Signal& s,
                      const std::string& time_label,
                      const std::string& column_prefix) {
  bool complex_data = !s.is_real();
  out << time_label;
  for (Eigen::Index c = 0; c < s.dim(); ++c) out << ',' << column_prefix << c;
  if (complex_data) {
    for (Eigen::Index c = 0; c < s.dim(); ++c) {
      out << ',' << column_prefix << c << "_im";
    }
  }
  out << '\n';
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    out << format_double(s.time(i));
    for (Eigen::Index c = 0; c < s.dim(); ++c) {
      out << ',' << format_double(s.samples()(c, i).real());
    }
    if (complex_data) {
      for (Eigen::Index c = 0; c < s.dim(); ++c) {
        out << ',' << format_double(s.samples()(c, i).imag());
      }
    }
    out << '\n';
  }
}

void write_signal_csv(const std::filesystem::path& path, const Signal& s,
                      const std::string& time_label,
                      const std::string& column_prefix) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot write CSV file " + path.string());
  write_signal_csv(out, s, time_label, column_prefix);
}

}  // namespace wellposed
