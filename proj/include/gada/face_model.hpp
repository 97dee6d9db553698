#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "gada/tensor.hpp"

namespace gada {

// PCA face mesh: mean shape plus identity/expression displacement bases, a
// fixed per-vertex UV chart, and a triangle list. Bases are stored flattened
// vertex-major: row 3*v + axis.
struct FaceModel {
  std::int64_t n_vertices = 0;
  int n_id = 0;
  int n_exp = 0;
  std::vector<std::array<double, 3>> mean_shape;   // N_V x 3, model units
  std::vector<double> basis_id;                    // (3 N_V) x n_id, row-major
  std::vector<double> basis_exp;                   // (3 N_V) x n_exp, row-major
  std::vector<std::array<double, 2>> uv_coords;    // N_V x 2, in [0,1]^2
  std::vector<std::int32_t> triangles;             // T x 3, flat

  std::int64_t n_triangles() const { return static_cast<std::int64_t>(triangles.size()) / 3; }
};

// Pose and coefficients regressed per image. rotation carries the
// weak-perspective scale; t_2d is in pixels.
struct AlignmentParams {
  std::array<double, 9> rotation{1, 0, 0, 0, 1, 0, 0, 0, 1};  // row-major 3x3
  std::vector<double> alpha_id;
  std::vector<double> alpha_exp;
  std::array<double, 2> t_2d{0.0, 0.0};
};

// Posed vertex positions: x,y are pixel coordinates (origin top-left, y
// down); z is depth, larger = closer to camera.
using VertexPositions = std::vector<std::array<double, 3>>;

// Deterministic stand-in for a scanned morphable model: a front-facing
// half-ellipsoid sampled on a grid_n x grid_n parametric grid, with smooth
// sinusoidal displacement fields as unit-norm basis columns. Vertex k = i*grid_n + j
// carries uv = (i, j) / (grid_n - 1).
FaceModel generate_synthetic_model(std::uint64_t seed, int grid_n, int n_id, int n_exp);

// V = R (S_mean + A_id a_id + A_exp a_exp) + [t_2d, 0]^T, one row per vertex.
VertexPositions reconstruct_vertices(const FaceModel& model, const AlignmentParams& params);

void save_face_model(const std::string& path, const FaceModel& model);
FaceModel load_face_model(const std::string& path);

}  // namespace gada
