#include "gada/renderer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gada {

RasterState rasterize(const VertexPositions& verts, const std::vector<std::int32_t>& triangles,
                      int width, int height) {
  if (width < 1 || height < 1) throw std::invalid_argument("rasterize: frame must be at least 1x1");

  RasterState rs;
  rs.height = height;
  rs.width = width;
  const std::int64_t np = rs.npixels();
  rs.zbuffer.assign(static_cast<size_t>(np), kZSentinel);
  rs.owner.assign(static_cast<size_t>(np), -1);
  rs.tri.assign(static_cast<size_t>(np), -1);
  rs.bary.assign(static_cast<size_t>(np), {0.0, 0.0, 0.0});
  rs.face_mask.assign(static_cast<size_t>(np), 0);

  const std::int64_t n_tris = static_cast<std::int64_t>(triangles.size()) / 3;
  for (std::int64_t t = 0; t < n_tris; ++t) {
    const auto& a = verts[static_cast<size_t>(triangles[static_cast<size_t>(3 * t)])];
    const auto& b = verts[static_cast<size_t>(triangles[static_cast<size_t>(3 * t + 1)])];
    const auto& c = verts[static_cast<size_t>(triangles[static_cast<size_t>(3 * t + 2)])];

    double area2 = (b[0] - a[0]) * (c[1] - a[1]) - (c[0] - a[0]) * (b[1] - a[1]);
    if (area2 == 0.0) continue;  // degenerate

    double minx = std::min({a[0], b[0], c[0]});
    double maxx = std::max({a[0], b[0], c[0]});
    double miny = std::min({a[1], b[1], c[1]});
    double maxy = std::max({a[1], b[1], c[1]});
    int c0 = std::max(0, static_cast<int>(std::floor(minx - 0.5)));
    int c1 = std::min(width - 1, static_cast<int>(std::ceil(maxx - 0.5)));
    int r0 = std::max(0, static_cast<int>(std::floor(miny - 0.5)));
    int r1 = std::min(height - 1, static_cast<int>(std::ceil(maxy - 0.5)));

    for (int r = r0; r <= r1; ++r) {
      double py = r + 0.5;
      for (int col = c0; col <= c1; ++col) {
        double px = col + 0.5;
        double la = ((b[1] - c[1]) * (px - c[0]) + (c[0] - b[0]) * (py - c[1])) / area2;
        double lb = ((c[1] - a[1]) * (px - c[0]) + (a[0] - c[0]) * (py - c[1])) / area2;
        double lc = 1.0 - la - lb;
        if (la < 0.0 || lb < 0.0 || lc < 0.0) continue;
        double depth = la * a[2] + lb * b[2] + lc * c[2];
        size_t p = static_cast<size_t>(r) * static_cast<size_t>(width) + static_cast<size_t>(col);
        if (depth > rs.zbuffer[p]) {
          rs.zbuffer[p] = depth;
          rs.owner[p] = triangles[static_cast<size_t>(3 * t)];
          rs.tri[p] = static_cast<std::int32_t>(t);
          rs.bary[p] = {la, lb, lc};
          rs.face_mask[p] = 1;
        }
      }
    }
  }
  for (std::uint8_t m : rs.face_mask) rs.covered += m;
  return rs;
}

Tensor render_additive(const Tensor& image, const RasterState& raster, const Tensor& colors) {
  if (image.shape.size() != 3 || image.dim(0) != raster.height || image.dim(1) != raster.width ||
      image.dim(2) != 3)
    throw std::invalid_argument("render_additive: image does not match raster dimensions");

  Tensor out = image;
  const std::int64_t np = raster.npixels();
  for (std::int64_t p = 0; p < np; ++p) {
    if (!raster.face_mask[static_cast<size_t>(p)]) continue;
    std::int32_t v = raster.owner[static_cast<size_t>(p)];
    for (int ch = 0; ch < 3; ++ch)
      out.data[static_cast<size_t>(3 * p + ch)] += colors.data[static_cast<size_t>(3 * v + ch)];
  }
  return out;
}

Tensor render_interpolated_on_zero(const RasterState& raster,
                                   const std::vector<std::int32_t>& triangles,
                                   const Tensor& colors) {
  Tensor out({raster.height, raster.width, 3});
  const std::int64_t np = raster.npixels();
  for (std::int64_t p = 0; p < np; ++p) {
    if (!raster.face_mask[static_cast<size_t>(p)]) continue;
    std::int32_t t = raster.tri[static_cast<size_t>(p)];
    const auto& l = raster.bary[static_cast<size_t>(p)];
    std::int32_t va = triangles[static_cast<size_t>(3 * t)];
    std::int32_t vb = triangles[static_cast<size_t>(3 * t + 1)];
    std::int32_t vc = triangles[static_cast<size_t>(3 * t + 2)];
    for (int ch = 0; ch < 3; ++ch) {
      double v = l[0] * colors.data[static_cast<size_t>(3 * va + ch)] +
                 l[1] * colors.data[static_cast<size_t>(3 * vb + ch)] +
                 l[2] * colors.data[static_cast<size_t>(3 * vc + ch)];
      out.data[static_cast<size_t>(3 * p + ch)] = static_cast<float>(v);
    }
  }
  return out;
}

Tensor bilinear_sample(const Tensor& grid, const std::vector<std::array<double, 2>>& coords) {
  const int h = static_cast<int>(grid.dim(0));
  const int w = static_cast<int>(grid.dim(1));
  Tensor out({static_cast<std::int64_t>(coords.size()), 3});

  for (size_t m = 0; m < coords.size(); ++m) {
    double gx = std::clamp(coords[m][0] - 0.5, 0.0, static_cast<double>(w - 1));
    double gy = std::clamp(coords[m][1] - 0.5, 0.0, static_cast<double>(h - 1));
    int x0 = static_cast<int>(std::floor(gx));
    int y0 = static_cast<int>(std::floor(gy));
    if (x0 > w - 2) x0 = std::max(0, w - 2);
    if (y0 > h - 2) y0 = std::max(0, h - 2);
    int x1 = std::min(w - 1, x0 + 1);
    int y1 = std::min(h - 1, y0 + 1);
    double fx = gx - x0;
    double fy = gy - y0;
    for (int ch = 0; ch < 3; ++ch) {
      double v00 = grid.at(y0, x0, ch);
      double v01 = grid.at(y0, x1, ch);
      double v10 = grid.at(y1, x0, ch);
      double v11 = grid.at(y1, x1, ch);
      double v = (1.0 - fy) * ((1.0 - fx) * v00 + fx * v01) + fy * ((1.0 - fx) * v10 + fx * v11);
      out.data[static_cast<size_t>(3 * m + ch)] = static_cast<float>(v);
    }
  }
  return out;
}

std::vector<std::array<double, 2>> uv_texel_coords(const FaceModel& model, int uv_h, int uv_w) {
  std::vector<std::array<double, 2>> coords(model.uv_coords.size());
  for (size_t k = 0; k < model.uv_coords.size(); ++k) {
    // uv = (row fraction, col fraction); u=0..1 spans texel centers.
    coords[k] = {0.5 + model.uv_coords[k][1] * (uv_w - 1),
                 0.5 + model.uv_coords[k][0] * (uv_h - 1)};
  }
  return coords;
}

Tensor vertex_colors_to_uv(const FaceModel& model, const Tensor& colors, int uv_h, int uv_w) {
  if (uv_h < 1 || uv_w < 1)
    throw std::invalid_argument("vertex_colors_to_uv: texture must be at least 1x1");
  auto coords = uv_texel_coords(model, uv_h, uv_w);
  VertexPositions uv_verts(coords.size());
  for (size_t k = 0; k < coords.size(); ++k) uv_verts[k] = {coords[k][0], coords[k][1], 0.0};
  RasterState rs = rasterize(uv_verts, model.triangles, uv_w, uv_h);
  return render_interpolated_on_zero(rs, model.triangles, colors);
}

double background_ratio(const RasterState& raster) {
  const std::int64_t np = raster.npixels();
  return static_cast<double>(np - raster.covered) / static_cast<double>(np);
}

}  // namespace gada
