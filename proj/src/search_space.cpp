#include "gada/search_space.hpp"

#include <stdexcept>

#include "gada/errors.hpp"

namespace gada {

namespace {

void clamp_face_range(Tensor& image, const RasterState* raster) {
  // [0.2, 0.8] on the perturbed area; with no raster the whole image is the
  // perturbed area.
  const std::int64_t np = image.dim(0) * image.dim(1);
  for (std::int64_t p = 0; p < np; ++p) {
    if (raster && !raster->face_mask[static_cast<size_t>(p)]) continue;
    for (int ch = 0; ch < 3; ++ch) {
      float& v = image.data[static_cast<size_t>(3 * p + ch)];
      v = v < 0.2f ? 0.2f : (v > 0.8f ? 0.8f : v);
    }
  }
}

}  // namespace

ImageSpace::ImageSpace(Tensor base, ClipRule clip) : base_(std::move(base)), clip_(clip) {}

std::array<std::int64_t, 3> ImageSpace::point_shape() const {
  return {base_.dim(0), base_.dim(1), 3};
}

Tensor ImageSpace::to_image(const Tensor& point) const {
  if (!point.same_shape(base_)) throw std::invalid_argument("ImageSpace: point shape mismatch");
  Tensor out = base_;
  for (size_t i = 0; i < out.data.size(); ++i) out.data[i] += point.data[i];
  clip01_inplace(out);
  if (clip_ == ClipRule::faceclip_02_08) clamp_face_range(out, nullptr);
  return out;
}

UvSpace::UvSpace(Tensor base, const FaceModel& model, const AlignmentParams& params, int uv_h,
                 int uv_w, ClipRule clip)
    : base_(std::move(base)), model_(model), uv_h_(uv_h), uv_w_(uv_w), clip_(clip) {
  VertexPositions verts = reconstruct_vertices(model, params);
  raster_ = rasterize(verts, model.triangles, static_cast<int>(base_.dim(1)),
                      static_cast<int>(base_.dim(0)));
  if (raster_.covered == 0) throw NoFaceCoverage();
  uv_texel_ = uv_texel_coords(model, uv_h, uv_w);
  projected_xy_.resize(verts.size());
  for (size_t k = 0; k < verts.size(); ++k) projected_xy_[k] = {verts[k][0], verts[k][1]};
}

std::array<std::int64_t, 3> UvSpace::point_shape() const { return {uv_h_, uv_w_, 3}; }

Tensor UvSpace::to_image(const Tensor& point) const {
  if (point.dim(0) != uv_h_ || point.dim(1) != uv_w_ || point.dim(2) != 3)
    throw std::invalid_argument("UvSpace: point shape mismatch");
  Tensor vertex_colors = bilinear_sample(point, uv_texel_);
  Tensor out = render_additive(base_, raster_, vertex_colors);
  clip01_inplace(out);
  if (clip_ == ClipRule::faceclip_02_08) clamp_face_range(out, &raster_);
  return out;
}

Tensor UvSpace::extract_base_texture() const {
  Tensor vertex_colors = bilinear_sample(base_, projected_xy_);
  return vertex_colors_to_uv(model_, vertex_colors, uv_h_, uv_w_);
}

std::unique_ptr<ImageSpace> make_image_space(const Tensor& attacked_image, ClipRule clip) {
  return std::make_unique<ImageSpace>(attacked_image, clip);
}

std::unique_ptr<UvSpace> make_uv_space(const Tensor& attacked_image, const FaceModel& model,
                                       const AlignmentParams& params, int uv_h, int uv_w,
                                       ClipRule clip) {
  return std::make_unique<UvSpace>(attacked_image, model, params, uv_h, uv_w, clip);
}

}  // namespace gada
