#include "quadspin/sweep.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <set>

#include "quadspin/format.hpp"
#include "quadspin/run.hpp"

namespace quadspin {

SweepAxis parse_sweep_axis(std::string_view name) {
  if (name == "eta") return SweepAxis::eta;
  if (name == "theta_css") return SweepAxis::theta_css;
  if (name == "phi_css") return SweepAxis::phi_css;
  if (name == "larmor") return SweepAxis::larmor;
  if (name == "spin") return SweepAxis::spin;
  throw ConfigError("axis", 0, "expected eta, theta_css, phi_css, larmor or spin, got '" + std::string(name) + "'");
}

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::eta: return "eta";
    case SweepAxis::theta_css: return "theta_css";
    case SweepAxis::phi_css: return "phi_css";
    case SweepAxis::larmor: return "larmor";
    case SweepAxis::spin: return "spin";
  }
  return "eta";
}

std::vector<double> parse_sweep_values(std::string_view text) {
  std::vector<double> out;
  try {
    if (text.find(':') != std::string_view::npos) {
      const auto c1 = text.find(':');
      const auto c2 = text.find(':', c1 + 1);
      if (c2 == std::string_view::npos) throw ConfigError("values", 0, "range must be a:b:n");
      const double a = parse_real(text.substr(0, c1));
      const double b = parse_real(text.substr(c1 + 1, c2 - c1 - 1));
      const double nd = parse_real(text.substr(c2 + 1));
      if (nd < 1 || nd != std::floor(nd)) throw ConfigError("values", 0, "range count must be a positive integer");
      const auto n = static_cast<int>(nd);
      for (int k = 0; k < n; ++k) out.push_back(n == 1 ? a : a + (b - a) * k / (n - 1));
    } else {
      std::size_t pos = 0;
      while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const auto item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        if (item.find_first_not_of(" \t") != std::string_view::npos) out.push_back(parse_real(item));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
      }
    }
  } catch (const InvalidArgument& e) {
    throw ConfigError("values", 0, e.what());
  }
  return out;
}

RunConfig SweepSpec::point(std::size_t index) const {
  RunConfig c = base;
  const double v = values.at(index);
  switch (axis) {
    case SweepAxis::eta: c.eta = v; break;
    case SweepAxis::theta_css: c.css_theta = v; break;
    case SweepAxis::phi_css: c.css_phi = v; break;
    case SweepAxis::larmor: c.larmor_hz = v; break;
    case SweepAxis::spin: {
      const double two_i = 2.0 * v;
      if (two_i != std::floor(two_i)) throw ConfigError("values", 0, "spin values must be multiples of 1/2");
      c.spin_two_i = static_cast<int>(two_i);
      break;
    }
  }
  return c;
}

void SweepSpec::validate() const {
  if (values.empty()) throw ConfigError("values", 0, "sweep axis has no values");
  std::set<double> seen;
  for (double v : values)
    if (!seen.insert(v).second) throw ConfigError("values", 0, "duplicate sweep value " + format_double(v));
  base.validate();
}

SweepResult run_sweep(const SweepSpec& spec, Parallelism parallelism) {
  spec.validate();
  const std::string axis = to_string(spec.axis);
  std::filesystem::create_directories(spec.base.output_dir);

  struct Outcome {
    std::optional<RunSummary> summary;
    std::string error;
  };
  std::vector<Outcome> outcomes(spec.values.size());
  parallel_for(spec.values.size(), parallelism, [&](std::size_t k) {
    try {
      outcomes[k].summary = run_single(spec.point(k), axis + "_" + std::to_string(k), Parallelism::serial());
    } catch (const std::exception& e) {
      outcomes[k].error = e.what();
    }
  });

  SweepResult result;
  result.aggregate = spec.base.output_dir / ("sweep_" + axis + ".csv");
  result.manifest = spec.base.output_dir / "sweep_manifest.json";
  std::ofstream agg(result.aggregate, std::ios::binary);
  agg << "index," << axis << ",xi_min,xi_mean,xi_max,duty_cycle,undefined,xi_terminal,status\n";
  nlohmann::ordered_json points = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    const double v = spec.values[k];
    agg << k << ',' << format_double(v) << ',';
    nlohmann::ordered_json p{{"index", k}, {"value", v}};
    if (outcomes[k].summary) {
      const auto& s = *outcomes[k].summary;
      const double terminal = s.records.empty() ? std::nan("") : s.records.back().xi_s;
      agg << format_double(s.bands.xi_min) << ',' << format_double(s.bands.xi_mean) << ','
          << format_double(s.bands.xi_max) << ',' << format_double(s.duty.value) << ',' << s.duty.undefined << ','
          << format_double(terminal) << ",ok\n";
      p["status"] = "ok";
      p["csv"] = s.csv.filename().string();
    } else {
      agg << "nan,nan,nan,nan,0,nan,failed\n";
      p["status"] = "failed";
      p["error"] = outcomes[k].error;
      result.failures.push_back({k, v, outcomes[k].error});
    }
    points.push_back(p);
  }
  nlohmann::ordered_json manifest;
  manifest["axis"] = axis;
  manifest["base_config"] = spec.base.to_json();
  manifest["points"] = points;
  manifest["failed"] = result.failures.size();
  std::ofstream(result.manifest, std::ios::binary) << manifest.dump(2) << '\n';
  return result;
}

}  // namespace quadspin
