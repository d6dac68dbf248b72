#pragma once

// Figure-reproduction scenarios. Every scenario writes its panel CSVs and a
// `<name>_manifest.json` listing the files, the baked parameters, which of
// them are assumption-backed, and the assertions evaluated on the data.

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "quadspin/parallel.hpp"

namespace quadspin {

namespace scenario_params {

/// I = 1, 3/2, ..., 9/2 as 2I.
inline constexpr std::array<int, 8> kSpinTwoI{2, 3, 4, 5, 6, 7, 8, 9};
/// OAT, MAT, TAC.
inline constexpr std::array<double, 3> kFig2Eta{0.0, 0.5, 1.0};
inline constexpr double kFig2TauMax = 10.0;

/// Intermediate values 0.25 and 0.75 are an interpolation choice.
inline constexpr std::array<double, 5> kFig3Eta{0.0, 0.25, 0.5, 0.75, 1.0};
inline constexpr std::array<int, 2> kFig3SpinTwoI{3, 9};
inline constexpr double kFig3TauMax = 10.0;

inline constexpr int kFig4aEtaPoints = 11;
inline constexpr int kFig4bSpinTwoI = 9;
inline constexpr double kFig4bEta = 0.5;
inline constexpr int kFig4bNTheta = 91;
inline constexpr int kFig4bNPhi = 180;

/// Figs. 5 and 6: I = 3/2 and 9/2, phi_CSS = pi/2, theta_CSS scan.
inline constexpr std::array<int, 2> kFig56SpinTwoI{3, 9};
inline constexpr std::array<double, 3> kFig56Eta{0.0, 0.5, 1.0};
inline constexpr int kFig56ThetaPoints = 37;  // 5 degree steps on [0, pi]
inline constexpr double kFig56TauMax = 50.0;

/// omega_0 / 2 pi = f_Q along x, W_phi / 2 pi = 0.001 f_Q.
inline constexpr double kFig7LarmorOverFq = 1.0;
inline constexpr double kFig7DephasingOverFq = 0.001;
inline constexpr std::array<double, 2> kFig7Eta{0.0, 0.5};
inline constexpr int kFig7SamplesPerInverseFq = 50;
inline constexpr int kFig7OutputStride = 25;

/// Panel Larmor values are assumption-backed (labelled per panel only).
inline constexpr std::array<double, 3> kFig8LarmorOverFq{0.05, 0.2, 1.0};
inline constexpr std::array<double, 2> kFig8Eta{0.0, 1.0};
inline constexpr std::array<int, 2> kFig8SpinTwoI{3, 9};
inline constexpr double kFig8TauMax = 200.0;

inline constexpr int kFig9SpinTwoI = 9;
inline constexpr double kFig9Eta = 1.0;
inline constexpr double kFig9LarmorOverFq = 0.05;
/// Search window for the four marked instants (two beat half-periods).
inline constexpr double kFig9WindowTau = 40.0;

}  // namespace scenario_params

struct ScenarioAssertion {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct ScenarioResult {
  std::string name;
  std::filesystem::path manifest;
  std::vector<std::filesystem::path> files;
  std::vector<ScenarioAssertion> assertions;
};

const std::vector<std::string>& scenario_names();

/// Throws InvalidArgument for an unknown name.
ScenarioResult run_scenario(std::string_view name, const std::filesystem::path& output_dir,
                            Parallelism parallelism = {});

}  // namespace quadspin
