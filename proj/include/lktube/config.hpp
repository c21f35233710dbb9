#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lktube/classification.hpp"
#include "lktube/tube.hpp"

namespace lktube {

// Raised on malformed configuration; maps to exit code 2 in the CLI.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct RunConfig {
  TubeFamily family;
  double radius = 0.5;
  CurvatureFunctions curvatures;
  double s0 = 0.0, s1 = 6.283185307179586;
  int ns = 10, nt = 10, nw = 10;
  std::optional<std::array<double, 2>> t_range, w_range;
  double integration_step = 1e-3;
  double fd_step = 1e-5;
  bool richardson = true;
  double class_tol = 1e-6, reg_tol = 1e-3, metric_tol = 1e-9, frame_tol = 1e-8;
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
  LkRoute route = LkRoute::ClosedForm;

  // classify section
  std::vector<TubeFamily> classify_families;      // defaults to all seven
  std::vector<std::string> witness_labels;
  std::vector<ScalarFunction> witness_k1;         // defaults: zero, 0.2, 0.3+0.1 sin s
  int fit_ns = 6, fit_nt = 6, fit_nw = 6;
  int fit_directions = 32;
  std::vector<double> fit_radii{0.0, 0.01, 0.03, 0.1, 0.3, 1.0, 3.0, 10.0};
  int fit_max_iterations = 10000;

  // mesh section
  std::vector<double> mesh_slices{0.0};
  int mesh_nt = 24, mesh_nw = 24;
  bool mesh_channels = true;

  TubeSpec make_spec() const;
  GridRanges grid_ranges() const;
  SuiteConfig make_suite_config() const;
};

RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(const std::string& json_text, const std::string& origin = "<config>");

}  // namespace lktube
