#include "gada/face_model.hpp"

#include <cmath>
#include <stdexcept>

#include "gada/errors.hpp"
#include "gada/rng.hpp"

namespace gada {

namespace {

constexpr double kPi = 3.14159265358979323846;

// One smooth displacement field over the parameter square, unit-normalized
// as a (3 N_V) column.
void fill_basis_column(std::vector<double>& basis, int col, int n_cols,
                       std::int64_t n_vertices, int grid_n, Rng& rng) {
  double fx = 1.0 + rng.uniform_int(3);       // spatial frequencies 1..3
  double fy = 1.0 + rng.uniform_int(3);
  double phx = rng.uniform(0.0, 2.0 * kPi);
  double phy = rng.uniform(0.0, 2.0 * kPi);
  double wx = rng.uniform(-1.0, 1.0);
  double wy = rng.uniform(-1.0, 1.0);
  double wz = rng.uniform(-1.0, 1.0);

  double sumsq = 0.0;
  for (std::int64_t k = 0; k < n_vertices; ++k) {
    int i = static_cast<int>(k / grid_n);
    int j = static_cast<int>(k % grid_n);
    double u = grid_n > 1 ? static_cast<double>(i) / (grid_n - 1) : 0.0;
    double v = grid_n > 1 ? static_cast<double>(j) / (grid_n - 1) : 0.0;
    double field = std::sin(fx * kPi * u + phx) * std::sin(fy * kPi * v + phy);
    double d[3] = {wx * field, wy * field, wz * field};
    for (int axis = 0; axis < 3; ++axis) {
      basis[static_cast<size_t>((3 * k + axis) * n_cols + col)] = d[axis];
      sumsq += d[axis] * d[axis];
    }
  }
  double norm = std::sqrt(sumsq);
  if (norm == 0.0) norm = 1.0;
  for (std::int64_t k = 0; k < 3 * n_vertices; ++k)
    basis[static_cast<size_t>(k * n_cols + col)] /= norm;
}

}  // namespace

FaceModel generate_synthetic_model(std::uint64_t seed, int grid_n, int n_id, int n_exp) {
  if (grid_n < 2) throw std::invalid_argument("generate_synthetic_model: grid_n must be >= 2");
  if (n_id < 1 || n_exp < 1)
    throw std::invalid_argument("generate_synthetic_model: basis widths must be >= 1");

  FaceModel m;
  m.n_vertices = static_cast<std::int64_t>(grid_n) * grid_n;
  m.n_id = n_id;
  m.n_exp = n_exp;
  m.mean_shape.resize(static_cast<size_t>(m.n_vertices));
  m.uv_coords.resize(static_cast<size_t>(m.n_vertices));

  // Half-ellipsoid bump over the parameter square; x,y span about one model
  // unit so the pose scale maps directly to face size in pixels.
  const double ax = 0.5, ay = 0.58, az = 0.35;
  for (int i = 0; i < grid_n; ++i) {
    for (int j = 0; j < grid_n; ++j) {
      std::int64_t k = static_cast<std::int64_t>(i) * grid_n + j;
      double u = static_cast<double>(i) / (grid_n - 1);
      double v = static_cast<double>(j) / (grid_n - 1);
      double px = (v - 0.5) * 2.0;  // columns run along x
      double py = (u - 0.5) * 2.0;  // rows run along y
      double r2 = px * px + py * py;
      double bump = r2 < 1.0 ? std::sqrt(1.0 - r2) : 0.0;
      m.mean_shape[static_cast<size_t>(k)] = {ax * px, ay * py, az * bump};
      m.uv_coords[static_cast<size_t>(k)] = {u, v};
    }
  }

  m.triangles.reserve(static_cast<size_t>(2 * (grid_n - 1) * (grid_n - 1) * 3));
  for (int i = 0; i + 1 < grid_n; ++i) {
    for (int j = 0; j + 1 < grid_n; ++j) {
      std::int32_t v00 = static_cast<std::int32_t>(i * grid_n + j);
      std::int32_t v01 = v00 + 1;
      std::int32_t v10 = v00 + grid_n;
      std::int32_t v11 = v10 + 1;
      m.triangles.insert(m.triangles.end(), {v00, v10, v11});
      m.triangles.insert(m.triangles.end(), {v00, v11, v01});
    }
  }

  m.basis_id.assign(static_cast<size_t>(3 * m.n_vertices) * n_id, 0.0);
  m.basis_exp.assign(static_cast<size_t>(3 * m.n_vertices) * n_exp, 0.0);
  Rng rng_id = Rng(seed).derive(101);
  Rng rng_exp = Rng(seed).derive(202);
  for (int c = 0; c < n_id; ++c)
    fill_basis_column(m.basis_id, c, n_id, m.n_vertices, grid_n, rng_id);
  for (int c = 0; c < n_exp; ++c)
    fill_basis_column(m.basis_exp, c, n_exp, m.n_vertices, grid_n, rng_exp);
  return m;
}

VertexPositions reconstruct_vertices(const FaceModel& model, const AlignmentParams& params) {
  if (static_cast<int>(params.alpha_id.size()) != model.n_id ||
      static_cast<int>(params.alpha_exp.size()) != model.n_exp)
    throw std::invalid_argument("reconstruct_vertices: coefficient lengths do not match bases");

  VertexPositions out(static_cast<size_t>(model.n_vertices));
  const auto& R = params.rotation;
  for (std::int64_t k = 0; k < model.n_vertices; ++k) {
    double s[3];
    for (int axis = 0; axis < 3; ++axis) {
      double v = model.mean_shape[static_cast<size_t>(k)][static_cast<size_t>(axis)];
      const std::int64_t row = 3 * k + axis;
      for (int c = 0; c < model.n_id; ++c)
        v += model.basis_id[static_cast<size_t>(row * model.n_id + c)] * params.alpha_id[static_cast<size_t>(c)];
      for (int c = 0; c < model.n_exp; ++c)
        v += model.basis_exp[static_cast<size_t>(row * model.n_exp + c)] * params.alpha_exp[static_cast<size_t>(c)];
      s[axis] = v;
    }
    out[static_cast<size_t>(k)] = {
        R[0] * s[0] + R[1] * s[1] + R[2] * s[2] + params.t_2d[0],
        R[3] * s[0] + R[4] * s[1] + R[5] * s[2] + params.t_2d[1],
        R[6] * s[0] + R[7] * s[1] + R[8] * s[2]};
  }
  return out;
}

void save_face_model(const std::string& path, const FaceModel& model) {
  TensorFile file;

  NamedTensor mean;
  mean.name = "mean_shape";
  mean.shape = {model.n_vertices, 3};
  mean.f32.reserve(static_cast<size_t>(model.n_vertices) * 3);
  for (const auto& v : model.mean_shape)
    for (double x : v) mean.f32.push_back(static_cast<float>(x));
  file.tensors.push_back(std::move(mean));

  NamedTensor bid;
  bid.name = "basis_id";
  bid.shape = {3 * model.n_vertices, model.n_id};
  bid.f32.assign(model.basis_id.begin(), model.basis_id.end());
  file.tensors.push_back(std::move(bid));

  NamedTensor bexp;
  bexp.name = "basis_exp";
  bexp.shape = {3 * model.n_vertices, model.n_exp};
  bexp.f32.assign(model.basis_exp.begin(), model.basis_exp.end());
  file.tensors.push_back(std::move(bexp));

  NamedTensor uv;
  uv.name = "uv_coords";
  uv.shape = {model.n_vertices, 2};
  uv.f32.reserve(static_cast<size_t>(model.n_vertices) * 2);
  for (const auto& v : model.uv_coords)
    for (double x : v) uv.f32.push_back(static_cast<float>(x));
  file.tensors.push_back(std::move(uv));

  NamedTensor tris;
  tris.name = "triangles";
  tris.dtype = NamedTensor::Dtype::i32;
  tris.shape = {model.n_triangles(), 3};
  tris.i32 = model.triangles;
  file.tensors.push_back(std::move(tris));

  save_tensor_file(path, file);
}

FaceModel load_face_model(const std::string& path) {
  TensorFile file = load_tensor_file(path);
  FaceModel m;

  const NamedTensor& mean = file.require("mean_shape");
  m.n_vertices = mean.shape.at(0);
  m.mean_shape.resize(static_cast<size_t>(m.n_vertices));
  for (std::int64_t k = 0; k < m.n_vertices; ++k)
    for (int a = 0; a < 3; ++a)
      m.mean_shape[static_cast<size_t>(k)][static_cast<size_t>(a)] = mean.f32[static_cast<size_t>(3 * k + a)];

  const NamedTensor& bid = file.require("basis_id");
  m.n_id = static_cast<int>(bid.shape.at(1));
  m.basis_id.assign(bid.f32.begin(), bid.f32.end());

  const NamedTensor& bexp = file.require("basis_exp");
  m.n_exp = static_cast<int>(bexp.shape.at(1));
  m.basis_exp.assign(bexp.f32.begin(), bexp.f32.end());

  const NamedTensor& uv = file.require("uv_coords");
  m.uv_coords.resize(static_cast<size_t>(m.n_vertices));
  for (std::int64_t k = 0; k < m.n_vertices; ++k)
    for (int a = 0; a < 2; ++a)
      m.uv_coords[static_cast<size_t>(k)][static_cast<size_t>(a)] = uv.f32[static_cast<size_t>(2 * k + a)];

  m.triangles = file.require("triangles").i32;
  return m;
}

}  // namespace gada
