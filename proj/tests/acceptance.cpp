// Acceptance checks. Each criterion prints exactly one [PASS]/[FAIL] line.
//
//   quadspin_acceptance                 all criteria
//   quadspin_acceptance --criterion N   criterion N only (exit 0 iff it passes)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

#include <CLI11.hpp>

#include "oracles.hpp"
#include "quadspin/analysis.hpp"
#include "quadspin/dynamics.hpp"
#include "quadspin/format.hpp"
#include "quadspin/metrics.hpp"
#include "quadspin/model.hpp"
#include "quadspin/run.hpp"
#include "quadspin/scenarios.hpp"
#include "quadspin/wigner.hpp"

using namespace quadspin;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

struct Criterion {
  int id;
  std::string title;
  double runtime_limit_s;  // 0: no limit stated
  std::function<Outcome()> body;
};

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

QuantumState y_css(int two_i) { return css(SpinQuantumNumber(two_i), BlochDirection(kPi / 2, kPi / 2)); }

// ---------------------------------------------------------------- 1

Outcome algebra() {
  constexpr double tol = 1e-12;
  Outcome out;
  double worst = 0.0;
  const Complex i(0.0, 1.0);
  for (int two_i = 1; two_i <= 9; ++two_i) {
    const SpinQuantumNumber s(two_i);
    const auto o = spin_operators(s);
    const int d = s.dim();
    worst = std::max(worst, max_abs(commutator(o.ix, o.iy).matrix() - i * o.iz.matrix()));
    worst = std::max(worst, max_abs(commutator(o.iy, o.iz).matrix() - i * o.ix.matrix()));
    worst = std::max(worst, max_abs(commutator(o.iz, o.ix).matrix() - i * o.iy.matrix()));
    worst = std::max(worst, max_abs((o.ix * o.ix + o.iy * o.iy + o.iz * o.iz).matrix() -
                                    s.casimir() * Matrix::Identity(d, d)));
    worst = std::max(worst, max_abs(o.iplus.adjoint().matrix() - o.iminus.matrix()));
    const Matrix lhs = (3.0 * (o.iz * o.iz) + 0.5 * (o.iplus * o.iplus + o.iminus * o.iminus)).matrix();
    const Matrix rhs = (o.isq + 2.0 * (o.iz * o.iz) - 2.0 * (o.iy * o.iy)).matrix();
    worst = std::max(worst, max_abs(lhs - rhs));
    if (two_i >= 2) {
      const Matrix mat = mat_hamiltonian(s, {1.0, 1.0}).matrix();
      worst = std::max(worst, max_abs(mat - (kTwoPi / 6.0) * rhs) / kTwoPi);
    }
  }
  out.require(worst <= tol, "max entry error " + fmt(worst) + " > 1e-12");
  out.note("max entry error " + fmt(worst));
  return out;
}

// ---------------------------------------------------------------- 2

Outcome css_contract() {
  constexpr double xi_tol = 1e-9, norm_tol = 1e-10;
  Outcome out;
  double worst_xi = 0.0, worst_norm = 0.0;
  for (int two_i = 2; two_i <= 9; ++two_i) {
    const SpinQuantumNumber s(two_i);
    for (int a = 0; a < 17; ++a)
      for (int b = 0; b < 16; ++b) {
        const auto r = squeezing_parameter(css(s, BlochDirection(kPi * a / 16, kTwoPi * b / 16)), s);
        worst_xi = std::max(worst_xi, std::abs(r.xi_s - 1.0));
        worst_norm = std::max(worst_norm, std::abs(r.mean_spin_norm() - 0.5 * two_i));
      }
  }
  out.require(worst_xi <= xi_tol, "xi_S deviation " + fmt(worst_xi));
  out.require(worst_norm <= norm_tol, "|<I>| deviation " + fmt(worst_norm));
  out.note("max |xi_S-1| " + fmt(worst_xi) + ", max ||<I>|-I| " + fmt(worst_norm));
  return out;
}

// ---------------------------------------------------------------- 3

Outcome fig2_periods() {
  constexpr double xi_tol = 1e-3;
  constexpr double ratio_threshold = 1.5;
  constexpr double resolution = 1e-6;  // relative resolution of the refined revival times
  constexpr double tau_max = 10.0, dt = 0.01;
  Outcome out;
  const SpinQuantumNumber s(2);
  std::map<double, double> revival;
  for (double eta : {0.0, 0.5, 1.0}) {
    const ClosedEvolution evo(mat_hamiltonian(s, {1.0, eta}), y_css(2));
    const auto m = refined_xi_minimum(evo, tau_max, dt);
    out.require(m.value < xi_tol, "eta=" + fmt(eta) + " min xi_S " + fmt(m.value));
    out.note("eta=" + fmt(eta) + " min xi_S " + fmt(m.value));
    const auto r = first_revival(evo, tau_max, dt);
    out.require(r.has_value(), "eta=" + fmt(eta) + " no revival found");
    if (r) {
      revival[eta] = r->t;
      out.note("revival tau " + fmt(r->t));
    }
  }
  if (revival.count(0.0) && revival.count(1.0)) {
    const double ratio = revival[1.0] / revival[0.0];
    out.require(ratio > ratio_threshold * (1.0 + resolution),
                "TAC/OAT revival ratio " + format_double(ratio) + " not > 1.5");
    out.note("TAC/OAT revival ratio " + format_double(ratio));
  }
  return out;
}

// ---------------------------------------------------------------- 4

Outcome oat_periodicity() {
  constexpr double tol = 1e-6;
  constexpr int samples = 2000;
  Outcome out;
  double worst = 0.0;
  for (int two_i : {3, 5, 7, 9}) {
    const SpinQuantumNumber s(two_i);
    const ClosedEvolution evo(oat_hamiltonian(s, oat_chi_for(1.0)), y_css(two_i));
    for (int k = 0; k <= samples; ++k) {
      const double tau = static_cast<double>(k) / samples;
      const double a = evo.xi_s(tau), b = evo.xi_s(tau + 1.0);
      if (std::isinf(a) && std::isinf(b)) continue;
      worst = std::max(worst, std::abs(a - b));
    }
  }
  out.require(worst < tol, "max |xi(tau+1)-xi(tau)| " + fmt(worst));
  out.note("max |xi(tau+1)-xi(tau)| " + fmt(worst));
  return out;
}

// ---------------------------------------------------------------- 5

Outcome rate_map_blind_spots() {
  constexpr double q_tol = 1e-6, deg_tol = 3.0;
  constexpr int nt = 91, np = 180;
  constexpr double eta = 0.5;
  Outcome out;
  const SpinQuantumNumber s(9);
  const double root = std::acos(std::sqrt(5.0 / 7.0));
  double worst_q = 0.0;
  for (double th : {root, kPi - root})
    for (double ph : {kPi / 2, 3 * kPi / 2}) worst_q = std::max(worst_q, std::abs(squeezing_rate(4.5, eta, th, ph)));
  out.require(worst_q < q_tol, "Q at the analytic roots " + fmt(worst_q));

  const auto q = rate_map(s, eta, nt, np);
  const auto [mn, mx] = std::minmax_element(q.begin(), q.end());
  const auto imin = static_cast<std::size_t>(mn - q.begin());
  const int j0 = static_cast<int>(imin % np), i0 = static_cast<int>(imin / np);
  const double phi0 = lattice_phi(j0, np);
  out.require(std::abs(phi0 - kPi / 2) < 1e-12 || std::abs(phi0 - 3 * kPi / 2) < 1e-12,
              "grid minimum at phi " + fmt(phi0));
  const auto refined = golden_section_min([&](double th) { return squeezing_rate(4.5, eta, th, phi0); },
                                          lattice_theta(std::max(i0 - 1, 0), nt),
                                          lattice_theta(std::min(i0 + 1, nt - 1), nt));
  out.require(refined.value < q_tol, "refined grid minimum Q " + fmt(refined.value));
  const double deg = 180.0 / kPi;
  const double off_root = std::min(std::abs(refined.t - root), std::abs(refined.t - (kPi - root))) * deg;
  const double off = std::min(std::abs(refined.t - kPi / 6), std::abs(refined.t - 5 * kPi / 6)) * deg;
  out.require(off_root < 1e-4, "refined root off the analytic root by " + fmt(off_root) + " deg");
  out.require(off < deg_tol, "root " + fmt(off) + " deg from pi/6, 5pi/6");
  const auto imax = static_cast<std::size_t>(mx - q.begin());
  const double th = lattice_theta(static_cast<int>(imax / np), nt);
  const int jmax = static_cast<int>(imax % np);
  out.require(std::abs(th - kPi / 2) < 1e-12 && (jmax == 0 || jmax == np / 2), "maximum off the +-x axis");
  out.note("Q(roots) " + fmt(worst_q) + ", root theta " + fmt(refined.t * deg) + " deg (" + fmt(off) +
           " deg from pi/6), max Q " + fmt(*mx));
  return out;
}

// ---------------------------------------------------------------- 6

Outcome energy_monotone() {
  Outcome out;
  double min_step_up = 1e300, min_step_down = 1e300;
  for (int two_i = 2; two_i <= 9; ++two_i) {
    const SpinQuantumNumber s(two_i);
    std::vector<double> e0, e90;
    for (int k = 0; k <= 10; ++k) {
      const Operator h = mat_hamiltonian(s, {1.0, 0.1 * k});
      e0.push_back(speed_bound(css(s, BlochDirection(kPi / 2, 0.0)), h).energy);
      e90.push_back(speed_bound(css(s, BlochDirection(kPi / 2, kPi / 2)), h).energy);
    }
    for (int k = 1; k <= 10; ++k) {
      min_step_up = std::min(min_step_up, e0[k] - e0[k - 1]);
      min_step_down = std::min(min_step_down, e90[k - 1] - e90[k]);
    }
  }
  out.require(min_step_up > 0.0, "E not strictly increasing at phi=0");
  out.require(min_step_down > 0.0, "E not strictly decreasing at phi=pi/2");
  out.note("smallest steps " + fmt(min_step_up) + ", " + fmt(min_step_down) + " rad/s");
  return out;
}

// ---------------------------------------------------------------- 7

Outcome rate_linear_in_spin() {
  constexpr double tol = 1e-12;
  Outcome out;
  std::mt19937_64 rng(20240607);
  std::uniform_real_distribution<double> eta(0.0, 1.0), th(0.0, kPi), ph(0.0, kTwoPi);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double e = eta(rng), t = th(rng), p = ph(rng);
    const double ref = squeezing_rate(SpinQuantumNumber(2), e, BlochDirection(t, p)) / 1.0;
    for (int two_i = 3; two_i <= 9; ++two_i)
      worst = std::max(worst, std::abs(squeezing_rate(SpinQuantumNumber(two_i), e, BlochDirection(t, p)) / (0.5 * two_i) - ref));
  }
  out.require(worst <= tol, "max |Q/I - Q(1)| " + fmt(worst));
  out.note("max |Q/I - Q(1)| " + fmt(worst));
  return out;
}

// ---------------------------------------------------------------- 8

Outcome lindblad_oracle() {
  constexpr double tol = 1e-8, trace_tol = 1e-9, purity_slack = 1e-9;
  const int two_i = 9, d = 10;
  const double w = kTwoPi * 0.001;
  Outcome out;
  std::mt19937_64 rng(8);
  const Matrix rho0 = oracle::random_density(d, rng);
  for (Integrator integ : {Integrator::eigenpropagator, Integrator::rk45}) {
    EvolutionSpec spec{Operator::zero(d)};
    spec.dephasing_rate = w;
    spec.t_max = 5.0 / w;
    spec.dt_sample = spec.t_max / 400;
    spec.integrator = integ;
    double worst = 0.0, drift = 0.0, rise = 0.0, prev = 1.0;
    std::size_t samples = 0;
    evolve(QuantumState::mixed(rho0), spec, [&](std::size_t, double t, const QuantumState& st) {
      const Matrix rho = st.density_matrix();
      worst = std::max(worst, max_abs(rho - oracle::dephased(rho0, two_i, w, t)));
      drift = std::max(drift, std::abs(rho.trace().real() - 1.0));
      const double p = rho.squaredNorm();
      if (samples++ > 0) rise = std::max(rise, p - prev);
      prev = p;
    });
    const std::string name = to_string(integ);
    out.require(worst < tol, name + " max deviation " + fmt(worst));
    out.require(drift < trace_tol, name + " trace drift " + fmt(drift));
    out.require(rise <= purity_slack, name + " purity rose by " + fmt(rise));
    out.note(name + ": dev " + fmt(worst) + ", trace drift " + fmt(drift));
  }
  return out;
}

// ---------------------------------------------------------------- 9

Outcome fig7_steady_state() {
  constexpr double xi1_tol = 0.02, eta_tol = 0.02;
  Outcome out;
  std::map<std::pair<int, double>, double> terminal;
  for (double eta : {0.0, 0.5})
    for (int two_i = 2; two_i <= 9; ++two_i) {
      RunConfig c;
      c.spin_two_i = two_i;
      c.eta = eta;
      c.larmor_hz = 1.0;
      c.field_theta = kPi / 2;
      c.field_phi = 0.0;
      c.dephasing_hz = 0.001;
      c.css_theta = kPi / 2;
      c.css_phi = kPi / 2;
      c.samples_per_inverse_fq = 50;
      c.output_stride = 25;
      const auto run = simulate(c);
      const auto last = last_defined(run.records);
      terminal[{two_i, eta}] = last ? last->xi_s : std::nan("");
    }
  std::string row;
  for (int two_i = 2; two_i <= 9; ++two_i) row += (two_i > 2 ? " " : "") + fmt(terminal[{two_i, 0.0}]);
  for (double eta : {0.0, 0.5}) {
    const double xi1 = terminal[{2, eta}];
    out.require(std::abs(xi1 - 1.0) <= xi1_tol, "eta=" + fmt(eta) + " terminal xi_S(I=1) " + fmt(xi1) + " not 1 +- 0.02");
    for (int two_i = 3; two_i <= 9; ++two_i)
      out.require(terminal[{two_i, eta}] >= terminal[{two_i - 1, eta}],
                  "eta=" + fmt(eta) + " terminal decreases at 2I=" + std::to_string(two_i));
  }
  double worst = 0.0;
  for (int two_i = 2; two_i <= 9; ++two_i) worst = std::max(worst, std::abs(terminal[{two_i, 0.0}] - terminal[{two_i, 0.5}]));
  out.require(worst <= eta_tol, "eta terminals differ by " + fmt(worst));
  out.note("eta=0 terminals (2I=2..9): " + row + "; max eta gap " + fmt(worst));
  return out;
}

// ---------------------------------------------------------------- 10

Outcome polar_blind_spot() {
  constexpr double tol = 1e-6;
  Outcome out;
  double worst = 0.0, duty_min = 1.0;
  for (int two_i = 2; two_i <= 9; ++two_i) {
    RunConfig c;
    c.spin_two_i = two_i;
    c.eta = 0.0;
    c.css_theta = 0.0;
    c.css_phi = 0.0;
    c.t_max_in_inverse_fq = 10.0;
    const auto run = simulate(c);
    for (const auto& r : run.records) worst = std::max(worst, r.mean_spin_defined ? std::abs(r.xi_s - 1.0) : 1e300);
    duty_min = std::min(duty_min, run.duty.value);
  }
  out.require(worst <= tol, "max |xi_S - 1| " + fmt(worst));
  out.require(duty_min == 1.0, "duty cycle " + fmt(duty_min));
  out.note("max |xi_S - 1| " + fmt(worst) + ", duty " + fmt(duty_min));
  return out;
}

// ---------------------------------------------------------------- 11

Outcome beat_property() {
  constexpr double envelope_ratio = 2.0;
  Outcome out;
  auto run_for = [](double eta) {
    RunConfig c;
    c.spin_two_i = 9;
    c.eta = eta;
    c.larmor_hz = 0.05;
    c.field_theta = kPi / 2;
    c.field_phi = 0.0;
    c.t_max_in_inverse_fq = 200.0;
    return simulate(c);
  };
  const auto tac = run_for(1.0);
  const auto oat = run_for(0.0);
  std::vector<double> xs;
  for (const auto& r : tac.records)
    if (r.mean_spin_defined) xs.push_back(r.xi_s);
  const auto env = analytic_envelope(xs);
  const auto [mn, mx] = std::minmax_element(env.begin(), env.end());
  const double ratio = *mx / *mn;
  const double f_tac = fraction_above(tac.records, 1.0), f_oat = fraction_above(oat.records, 1.0);
  out.require(ratio > envelope_ratio, "envelope max/min " + fmt(ratio));
  out.require(f_oat > f_tac, "OAT fraction above 1 " + fmt(f_oat) + " <= eta=1 fraction " + fmt(f_tac));
  out.note("envelope max/min " + fmt(ratio) + ", fraction xi>1: OAT " + fmt(f_oat) + " vs eta=1 " + fmt(f_tac));
  return out;
}

// ---------------------------------------------------------------- 12

Outcome wigner_suite() {
  constexpr double norm_tol = 1e-6, uniform_tol = 1e-10;
  Outcome out;
  const SphereGrid grid(91, 180);
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> th(0.2, kPi - 0.2), ph(0.0, kTwoPi);
  double worst_norm = 0.0, worst_uniform = 0.0;
  int worst_cells = 0;
  for (int two_i = 1; two_i <= 9; ++two_i) {
    const SpinQuantumNumber s(two_i);
    const int d = s.dim();
    const auto mm = wigner_distribution(QuantumState::mixed(Matrix::Identity(d, d) / static_cast<double>(d)), grid);
    for (double w : mm.values) worst_uniform = std::max(worst_uniform, std::abs(w - 1.0 / (4.0 * kPi)));
    worst_norm = std::max(worst_norm, std::abs(mm.integral() - 1.0));
    const auto rf = wigner_distribution(QuantumState::mixed(oracle::random_density(d, rng)), grid);
    worst_norm = std::max(worst_norm, std::abs(rf.integral() - 1.0));
    for (int rep = 0; rep < 3; ++rep) {
      const double t = th(rng), p = ph(rng);
      const auto f = wigner_distribution(css(s, BlochDirection(t, p)), grid);
      worst_norm = std::max(worst_norm, std::abs(f.integral() - 1.0));
      const auto [ai, aj] = f.argmax();
      const auto [ni, nj] = grid.nearest(t, p);
      const int dj = std::min(std::abs(aj - nj), grid.n_phi() - std::abs(aj - nj));
      worst_cells = std::max({worst_cells, std::abs(ai - ni), dj});
    }
  }
  out.require(worst_norm <= norm_tol, "normalization error " + fmt(worst_norm));
  out.require(worst_uniform <= uniform_tol, "maximally mixed deviation " + fmt(worst_uniform));
  out.require(worst_cells <= 1, "css peak off by " + std::to_string(worst_cells) + " cells");
  out.note("norm err " + fmt(worst_norm) + ", uniform err " + fmt(worst_uniform) + ", peak offset " +
           std::to_string(worst_cells) + " cell(s)");
  return out;
}

// ---------------------------------------------------------------- 13

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    files[fs::relative(e.path(), dir).generic_string()] = s.str();
  }
  return files;
}

Outcome determinism() {
  Outcome out;
  const fs::path root = fs::temp_directory_path() / ("quadspin_acceptance_" + std::to_string(::getpid()));
  const fs::path dir = root / "fig2";
  const std::vector<std::string> runs{"--workers 1", "--workers 1", "--workers 4", ""};
  std::vector<std::map<std::string, std::string>> snaps;
  // Same output directory every time: the sidecars echo it.
  for (const auto& flags : runs) {
    fs::remove_all(root);
    const std::string cmd = std::string(QUADSPIN_CLI_PATH) + " scenario fig2 --output-dir " + dir.string() + " " +
                            flags + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    out.require(WIFEXITED(status) && WEXITSTATUS(status) == 0, "CLI run '" + flags + "' failed");
    if (!out.pass) return out;
    snaps.push_back(snapshot(dir));
  }
  fs::remove_all(root);
  out.require(!snaps[0].empty(), "no output files");
  for (std::size_t k = 1; k < runs.size(); ++k)
    out.require(snaps[k] == snaps[0], "run " + std::to_string(k) + " (" + (runs[k].empty() ? "default" : runs[k]) +
                                          ") differs from run 0");
  out.note(std::to_string(snaps[0].size()) + " files compared across " + std::to_string(runs.size()) + " runs");
  return out;
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "spin algebra identities to 1e-12", 1.0, algebra},
      {2, "css contract on a 17x16 grid", 5.0, css_contract},
      {3, "I=1 perfect squeezing and TAC/OAT revival ratio > 1.5", 5.0, fig2_periods},
      {4, "OAT periodicity for half-integer I", 5.0, oat_periodicity},
      {5, "rate-map blind spots and maximum", 5.0, rate_map_blind_spots},
      {6, "E(eta) monotonicity", 5.0, energy_monotone},
      {7, "Q linear in I", 0.0, rate_linear_in_spin},
      {8, "H=0 dephasing oracle", 5.0, lindblad_oracle},
      {9, "field-plus-dephasing steady state", 60.0, fig7_steady_state},
      {10, "OAT polar blind spot", 0.0, polar_blind_spot},
      {11, "beat envelope and anti-squeezed fraction", 30.0, beat_property},
      {12, "Wigner suite", 10.0, wigner_suite},
      {13, "byte-identical fig2 output across runs and worker counts", 0.0, determinism},
  };
  return all;
}

bool run_one(const Criterion& c) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = c.body();
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (c.runtime_limit_s > 0.0 && secs > c.runtime_limit_s) {
    out.require(false, "runtime " + fmt(secs) + " s over " + fmt(c.runtime_limit_s) + " s");
  }
  std::cout << (out.pass ? "[PASS] " : "[FAIL] ") << "criterion " << c.id << ": " << c.title << " -- " << out.detail
            << " (" << fmt(secs) << " s)" << std::endl;
  return out.pass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  int only = 0;
  app.add_option("--criterion", only, "run a single criterion (1-13)");
  CLI11_PARSE(app, argc, argv);

  bool ok = true;
  bool found = false;
  for (const auto& c : criteria()) {
    if (only != 0 && c.id != only) continue;
    found = true;
    ok = run_one(c) && ok;
  }
  if (!found) {
    std::cerr << "no criterion " << only << '\n';
    return 2;
  }
  return ok ? 0 : 1;
}
