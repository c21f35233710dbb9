#pragma once

#include <filesystem>
#include <vector>

#include "lktube/classification.hpp"
#include "lktube/tube.hpp"

namespace lktube {

struct MeshOptions {
  std::vector<double> slices;  // fixed s values, one sheet per slice
  int nt = 24, nw = 24;
  GridRanges ranges;      // only t/w parts are used
  double fd_step = 1e-5;
  bool richardson = true;
  bool channels = true;   // emit the kappa3 / residual sidecar CSV
  int threads = 1;
};

struct MeshResult {
  std::size_t vertices = 0;
  std::size_t triangles = 0;
  std::size_t flagged = 0;  // vertices outside the regular region
};

// Writes a triangulated OBJ over a rectangular (t,w) grid per s-slice, plus a
// sidecar CSV keyed by vertex index with per-vertex scalar channels.
MeshResult write_tube_mesh(const TubeSpec& spec, const MeshOptions& opt,
                           const std::filesystem::path& obj_path,
                           const std::filesystem::path& csv_path);

}  // namespace lktube
