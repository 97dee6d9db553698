#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "gada/face_model.hpp"
#include "gada/tensor.hpp"

namespace gada {

// Depth sentinel for uncovered pixels.
constexpr double kZSentinel = -1e8;

// Per-pixel result of rasterizing one scene. Computed once per image; the
// attack re-renders colors against it on every query.
struct RasterState {
  int height = 0;
  int width = 0;
  std::vector<double> zbuffer;                 // kZSentinel where uncovered
  std::vector<std::int32_t> owner;             // first vertex of winning triangle, -1
  std::vector<std::int32_t> tri;               // winning triangle index, -1
  std::vector<std::array<double, 3>> bary;     // barycentric coords of the winner
  std::vector<std::uint8_t> face_mask;         // 1 where covered
  std::int64_t covered = 0;

  std::int64_t npixels() const { return static_cast<std::int64_t>(height) * width; }
};

// Z-buffer rasterization at pixel centers (col+0.5, row+0.5). A pixel is
// inside a triangle when all barycentric coordinates are >= 0; the triangle
// with the largest interpolated depth wins, ties going to the lower triangle
// index. Zero-area triangles cover nothing.
RasterState rasterize(const VertexPositions& verts, const std::vector<std::int32_t>& triangles,
                      int width, int height);

// Flat first-vertex additive projection: out[p] = image[p] + colors[owner[p]]
// on covered pixels. No range clipping here.
Tensor render_additive(const Tensor& image, const RasterState& raster, const Tensor& colors);

// Barycentric-interpolated colors over a zero image (used for texture
// extraction, where fidelity matters more than convergence).
Tensor render_interpolated_on_zero(const RasterState& raster,
                                   const std::vector<std::int32_t>& triangles,
                                   const Tensor& colors);

// Border-clamped bilinear sampling of an (H, W, 3) grid at continuous pixel
// coordinates (x, y); the texel (c, r) has its center at (c+0.5, r+0.5).
Tensor bilinear_sample(const Tensor& grid, const std::vector<std::array<double, 2>>& coords);

// Texel-space sampling coordinates of each vertex's UV position, for a
// uv_h x uv_w texture. Shared by UV->colors sampling and UV rasterization so
// the two directions agree exactly.
std::vector<std::array<double, 2>> uv_texel_coords(const FaceModel& model, int uv_h, int uv_w);

// Rasterizes the triangle list in UV space (all depths equal, z-buffer at the
// sentinel so everything renders) and interpolates vertex colors; texels
// covered by no triangle stay 0.
Tensor vertex_colors_to_uv(const FaceModel& model, const Tensor& colors, int uv_h, int uv_w);

// Fraction of pixels not covered by the face mesh.
double background_ratio(const RasterState& raster);

}  // namespace gada
