#include "quadspin/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "quadspin/model.hpp"

namespace quadspin {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string describe(const std::string& field, int line, const std::string& message) {
  std::string out;
  if (line > 0) out += "line " + std::to_string(line) + ": ";
  if (!field.empty()) out += field + ": ";
  return out + message;
}

int parse_int(std::string_view key, std::string_view text, int line) {
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (res.ec != std::errc() || res.ptr != end) {
    throw ConfigError(std::string(key), line, "expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

double parse_real_field(std::string_view key, std::string_view text, int line) {
  try {
    return parse_real(text);
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string(key), line, e.what());
  }
}

void require(bool ok, const char* field, const std::string& message) {
  if (!ok) throw ConfigError(field, 0, message);
}

}  // namespace

ConfigError::ConfigError(std::string field, int line, const std::string& message)
    : Error(describe(field, line, message)), field_(std::move(field)), line_(line) {}

double parse_real(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw InvalidArgument("empty number");
  double sign = 1.0;
  if (text.front() == '-' || text.front() == '+') {
    if (text.front() == '-') sign = -1.0;
    text.remove_prefix(1);
  }
  double value = 1.0;
  char op = '*';
  while (true) {
    text = trim(text);
    std::size_t len = 0;
    double factor = 0.0;
    if (text.substr(0, 2) == "pi") {
      factor = kPi;
      len = 2;
    } else {
      const auto res = std::from_chars(text.data(), text.data() + text.size(), factor);
      if (res.ec != std::errc() || res.ptr == text.data())
        throw InvalidArgument("cannot parse number '" + std::string(text) + "'");
      len = static_cast<std::size_t>(res.ptr - text.data());
    }
    value = op == '*' ? value * factor : value / factor;
    text = trim(text.substr(len));
    if (text.empty()) break;
    op = text.front();
    if (op != '*' && op != '/') throw InvalidArgument("unexpected '" + std::string(text) + "' in number");
    text.remove_prefix(1);
  }
  if (!std::isfinite(value)) throw InvalidArgument("number is not finite");
  return sign * value;
}

std::string to_string(Integrator integrator) {
  switch (integrator) {
    case Integrator::eigenpropagator: return "eigenpropagator";
    case Integrator::rk4: return "rk4";
    case Integrator::rk45: return "rk45";
  }
  return "eigenpropagator";
}

Integrator parse_integrator(std::string_view text) {
  if (text == "eigenpropagator") return Integrator::eigenpropagator;
  if (text == "rk4") return Integrator::rk4;
  if (text == "rk45") return Integrator::rk45;
  throw ConfigError("integrator", 0, "expected eigenpropagator, rk4 or rk45, got '" + std::string(text) + "'");
}

void RunConfig::set(std::string_view key, std::string_view value, int line) {
  key = trim(key);
  value = trim(value);
  const std::string k(key);
  if (key == "spin_two_i") spin_two_i = parse_int(key, value, line);
  else if (key == "eta") eta = parse_real_field(key, value, line);
  else if (key == "f_q_hz") f_q_hz = parse_real_field(key, value, line);
  else if (key == "larmor_hz") larmor_hz = parse_real_field(key, value, line);
  else if (key == "field_theta") field_theta = parse_real_field(key, value, line);
  else if (key == "field_phi") field_phi = parse_real_field(key, value, line);
  else if (key == "dephasing_hz") dephasing_hz = parse_real_field(key, value, line);
  else if (key == "css_theta") css_theta = parse_real_field(key, value, line);
  else if (key == "css_phi") css_phi = parse_real_field(key, value, line);
  else if (key == "t_max_in_inverse_fq") {
    if (value == "auto") t_max_in_inverse_fq.reset();
    else t_max_in_inverse_fq = parse_real_field(key, value, line);
  } else if (key == "samples_per_inverse_fq") samples_per_inverse_fq = parse_int(key, value, line);
  else if (key == "integrator") {
    try {
      integrator = parse_integrator(value);
    } catch (const ConfigError& e) {
      throw ConfigError(k, line, "expected eigenpropagator, rk4 or rk45");
    }
  } else if (key == "output_dir") output_dir = std::string(value);
  else if (key == "output_stride") output_stride = parse_int(key, value, line);
  else throw ConfigError(k, line, "unknown key");
}

void RunConfig::validate() const {
  require(spin_two_i >= 2 && spin_two_i <= 40, "spin_two_i", "must lie in [2, 40] (quadrupolar spin, I >= 1)");
  require(eta >= 0.0 && eta <= 1.0, "eta", "must lie in [0, 1]");
  require(f_q_hz > 0.0 && std::isfinite(f_q_hz), "f_q_hz", "must be positive");
  require(larmor_hz >= 0.0 && std::isfinite(larmor_hz), "larmor_hz", "must be >= 0");
  require(field_theta >= 0.0 && field_theta <= kPi, "field_theta", "must lie in [0, pi]");
  require(field_phi >= 0.0 && field_phi < kTwoPi, "field_phi", "must lie in [0, 2 pi)");
  require(dephasing_hz >= 0.0 && std::isfinite(dephasing_hz), "dephasing_hz", "must be >= 0");
  require(css_theta >= 0.0 && css_theta <= kPi, "css_theta", "must lie in [0, pi]");
  require(css_phi >= 0.0 && css_phi < kTwoPi, "css_phi", "must lie in [0, 2 pi)");
  if (t_max_in_inverse_fq) {
    require(*t_max_in_inverse_fq > 0.0 && std::isfinite(*t_max_in_inverse_fq), "t_max_in_inverse_fq",
            "must be positive");
  }
  require(samples_per_inverse_fq >= 50, "samples_per_inverse_fq", "must be >= 50");
  require(output_stride >= 1, "output_stride", "must be >= 1");
  require(!output_dir.empty(), "output_dir", "must not be empty");
}

double RunConfig::dephasing_rate() const { return kTwoPi * dephasing_hz; }

double RunConfig::resolved_t_max_tau() const {
  if (t_max_in_inverse_fq) return *t_max_in_inverse_fq;
  if (dephasing_hz > 0.0) return 50.0 * f_q_hz / dephasing_rate();
  return 10.0;
}

Operator RunConfig::hamiltonian() const {
  const SpinQuantumNumber spin(spin_two_i);
  Operator h = mat_hamiltonian(spin, EfgParameters{f_q_hz, eta});
  if (larmor_hz > 0.0) {
    h += zeeman_hamiltonian(spin, ZeemanParameters{larmor_hz, BlochDirection(field_theta, field_phi)});
  }
  return h;
}

EvolutionSpec RunConfig::evolution_spec() const {
  EvolutionSpec spec;
  spec.hamiltonian = hamiltonian();
  spec.dephasing_rate = dephasing_rate();
  spec.t_max = resolved_t_max_tau() / f_q_hz;
  spec.dt_sample = 1.0 / (samples_per_inverse_fq * f_q_hz);
  spec.integrator = integrator;
  return spec;
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["spin_two_i"] = spin_two_i;
  j["eta"] = eta;
  j["f_q_hz"] = f_q_hz;
  j["larmor_hz"] = larmor_hz;
  j["field_theta"] = field_theta;
  j["field_phi"] = field_phi;
  j["dephasing_hz"] = dephasing_hz;
  j["css_theta"] = css_theta;
  j["css_phi"] = css_phi;
  if (t_max_in_inverse_fq) j["t_max_in_inverse_fq"] = *t_max_in_inverse_fq;
  else j["t_max_in_inverse_fq"] = nullptr;
  j["samples_per_inverse_fq"] = samples_per_inverse_fq;
  j["integrator"] = to_string(integrator);
  j["output_dir"] = output_dir.generic_string();
  j["output_stride"] = output_stride;
  return j;
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  RunConfig c;
  if (!j.is_object()) throw ConfigError("", 0, "config echo must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "spin_two_i") c.spin_two_i = value.get<int>();
      else if (key == "eta") c.eta = value.get<double>();
      else if (key == "f_q_hz") c.f_q_hz = value.get<double>();
      else if (key == "larmor_hz") c.larmor_hz = value.get<double>();
      else if (key == "field_theta") c.field_theta = value.get<double>();
      else if (key == "field_phi") c.field_phi = value.get<double>();
      else if (key == "dephasing_hz") c.dephasing_hz = value.get<double>();
      else if (key == "css_theta") c.css_theta = value.get<double>();
      else if (key == "css_phi") c.css_phi = value.get<double>();
      else if (key == "t_max_in_inverse_fq") {
        if (value.is_null()) c.t_max_in_inverse_fq.reset();
        else c.t_max_in_inverse_fq = value.get<double>();
      } else if (key == "samples_per_inverse_fq") c.samples_per_inverse_fq = value.get<int>();
      else if (key == "integrator") c.integrator = parse_integrator(value.get<std::string>());
      else if (key == "output_dir") c.output_dir = value.get<std::string>();
      else if (key == "output_stride") c.output_stride = value.get<int>();
      else throw ConfigError(key, 0, "unknown key");
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(key, 0, std::string("wrong JSON type: ") + e.what());
    }
  }
  return c;
}

RunConfig parse_config(std::string_view text, RunConfig base) {
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto c = line.find_first_of("#;"); c != std::string_view::npos) line = line.substr(0, c);
    line = trim(line);
    if (line.empty() || line.front() == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("", line_no, "expected 'key = value'");
    base.set(line.substr(0, eq), line.substr(eq + 1), line_no);
  }
  return base;
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", 0, "cannot open config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), std::move(base));
}

void apply_overrides(RunConfig& config, const std::vector<std::string>& assignments) {
  for (const auto& a : assignments) {
    const auto eq = a.find('=');
    if (eq == std::string::npos) throw ConfigError(a, 0, "override must be key=value");
    config.set(std::string_view(a).substr(0, eq), std::string_view(a).substr(eq + 1));
  }
}

}  // namespace quadspin
