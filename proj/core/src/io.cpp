#include "wellposed/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "wellposed/errors.hpp"

namespace wellposed {

using nlohmann::json;

namespace {

cplx complex_value(const json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw SchemaError(where + ": expected a number or [re, im]");
}

Eigen::VectorXcd complex_vector(const json& v, const std::string& where) {
  if (!v.is_array()) throw SchemaError(where + ": expected an array");
  Eigen::VectorXcd out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] =
        complex_value(v[i], where + "[" + std::to_string(i) + "]");
  }
  return out;
}

Eigen::MatrixXcd complex_matrix(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) {
    throw SchemaError(where + ": expected a non-empty array of rows");
  }
  const std::size_t rows = v.size();
  if (!v[0].is_array()) throw SchemaError(where + ": rows must be arrays");
  const std::size_t cols = v[0].size();
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(rows),
                       static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!v[r].is_array() || v[r].size() != cols) {
      throw SchemaError(where + ": row " + std::to_string(r) + " has " +
                        std::to_string(v[r].is_array() ? v[r].size() : 0) +
                        " entries, expected " + std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          complex_value(v[r][c], where + "[" + std::to_string(r) + "][" +
                                     std::to_string(c) + "]");
    }
  }
  return out;
}

double number(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key) || !obj[key].is_number()) {
    throw SchemaError(where + "." + key + ": expected a number");
  }
  return obj[key].get<double>();
}

TailMajorant tail_value(const json& t) {
  if (!t.is_object() || !t.contains("kind") || !t["kind"].is_string()) {
    throw SchemaError("tail: expected an object with a `kind`");
  }
  std::string kind = t["kind"];
  if (kind == "inverse_quadratic") {
    return TailMajorant::inverse_quadratic(number(t, "coefficient", "tail"),
                                           number(t, "offset", "tail"));
  }
  if (kind == "power") {
    return TailMajorant::power_law(number(t, "coefficient", "tail"),
                                   number(t, "exponent", "tail"));
  }
  throw SchemaError("tail: unknown kind '" + kind + "'");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

ParsedSystem parse_system_description(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("system description must be an object");

  static const char* known[] = {"eigenvalues", "control",  "observation",
                                "feedthrough", "shift",    "stability",
                                "builtin",     "modes",    "tail",
                                "exact"};
  for (const auto& [key, _] : doc.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw SchemaError("unknown field `" + key + "`");
  }

  SystemDescription d;
  try {
    if (doc.contains("builtin") && !doc["builtin"].is_null()) {
      if (!doc["builtin"].is_string()) throw SchemaError("builtin: expected a string");
      d.builtin = doc["builtin"].get<std::string>();
    }
    if (doc.contains("modes")) {
      if (!doc["modes"].is_number_integer()) throw SchemaError("modes: expected an integer");
      d.modes = doc["modes"].get<long>();
    }
    if (doc.contains("eigenvalues")) d.eigenvalues = complex_vector(doc["eigenvalues"], "eigenvalues");
    if (doc.contains("control")) d.control = complex_matrix(doc["control"], "control");
    if (doc.contains("observation")) d.observation = complex_matrix(doc["observation"], "observation");
    if (doc.contains("feedthrough")) d.feedthrough = complex_matrix(doc["feedthrough"], "feedthrough");
    if (doc.contains("shift")) {
      if (!doc["shift"].is_number()) throw SchemaError("shift: expected a number");
      d.shift = doc["shift"].get<double>();
    }
    if (doc.contains("stability")) {
      const json& s = doc["stability"];
      if (!s.is_object()) throw SchemaError("stability: expected an object");
      d.stability = StabilityBound{number(s, "K", "stability"),
                                   number(s, "omega", "stability")};
    }
    if (doc.contains("tail") && !doc["tail"].is_null()) d.tail = tail_value(doc["tail"]);
    if (doc.contains("exact")) {
      if (!doc["exact"].is_boolean()) throw SchemaError("exact: expected a boolean");
      d.exact = doc["exact"].get<bool>();
    }
  } catch (const json::exception& e) {
    throw SchemaError(e.what());
  }
  return {std::move(d), doc.dump()};
}

ParsedSystem read_system_description(const std::filesystem::path& path) {
  return parse_system_description(read_file(path));
}

ExtendedState read_extended_state(const std::filesystem::path& envelope) {
  json doc;
  try {
    doc = json::parse(read_file(envelope));
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("malformed extended-state JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("pastOutput") ||
      !doc.contains("futureInput") || !doc.contains("state") ||
      !doc["pastOutput"].is_string() || !doc["futureInput"].is_string()) {
    throw SchemaError(
        "extended state needs `pastOutput`, `futureInput` and `state`");
  }
  double dt = doc.contains("dt") && doc["dt"].is_number() ? doc["dt"].get<double>() : 1.0;
  auto base = envelope.parent_path();
  Signal past = read_signal_csv(base / doc["pastOutput"].get<std::string>(), dt);
  Signal future = read_signal_csv(base / doc["futureInput"].get<std::string>(), dt);
  SpectralVector state = complex_vector(doc["state"], "state");
  return {std::move(past), std::move(state), std::move(future)};
}

void write_extended_state(const std::filesystem::path& envelope,
                          const ExtendedState& xs) {
  std::string stem = envelope.stem().string();
  std::string past_name = stem + "_past.csv";
  std::string future_name = stem + "_future.csv";
  auto base = envelope.parent_path();
  write_signal_csv(base / past_name, xs.past_output, "time", "y");
  write_signal_csv(base / future_name, xs.future_input, "time", "u");

  json doc;
  doc["dt"] = xs.future_input.dt();
  doc["pastOutput"] = past_name;
  doc["futureInput"] = future_name;
  json state = json::array();
  for (Eigen::Index n = 0; n < xs.state.size(); ++n) {
    state.push_back({xs.state[n].real(), xs.state[n].imag()});
  }
  doc["state"] = state;
  std::ofstream out(envelope);
  if (!out) throw SchemaError("cannot write " + envelope.string());
  out << doc.dump(2) << "\n";
}

}  // namespace wellposed
