#pragma once

#include <array>
#include <memory>
#include <vector>

#include "gada/face_model.hpp"
#include "gada/renderer.hpp"
#include "gada/tensor.hpp"

namespace gada {

// A run that starts from a fetched dictionary perturbation clamps the
// perturbed area into [0.2, 0.8] for the whole run, to keep the search away
// from the pixel-range boundary.
enum class ClipRule { off, faceclip_02_08 };

// Maps an abstract search point (a perturbation grid) to a query image and an
// image-space perturbation norm. Points are (h, w, 3) tensors.
class SearchSpace {
 public:
  virtual ~SearchSpace() = default;

  virtual std::array<std::int64_t, 3> point_shape() const = 0;
  std::int64_t dims() const {
    auto s = point_shape();
    return s[0] * s[1] * s[2];
  }
  virtual Tensor to_image(const Tensor& point) const = 0;
  virtual const Tensor& base_image() const = 0;
  // Pixels the adapter may modify; nullptr means all pixels.
  virtual const RasterState* raster() const { return nullptr; }

  double norm(const Tensor& point) const { return l2_diff(to_image(point), base_image()); }
  Tensor zero_point() const { return Tensor(std::vector<std::int64_t>{
      point_shape()[0], point_shape()[1], point_shape()[2]}); }
};

// Full-resolution perturbation: to_image = clip(x_A + point, 0, 1).
class ImageSpace final : public SearchSpace {
 public:
  ImageSpace(Tensor base, ClipRule clip);
  std::array<std::int64_t, 3> point_shape() const override;
  Tensor to_image(const Tensor& point) const override;
  const Tensor& base_image() const override { return base_; }

 private:
  Tensor base_;
  ClipRule clip_;
};

// UV-texture perturbation projected through the face mesh. The raster state
// is computed once at construction; every query renders the sampled vertex
// colors additively onto the base image. Non-face pixels always equal the
// base image exactly.
class UvSpace final : public SearchSpace {
 public:
  UvSpace(Tensor base, const FaceModel& model, const AlignmentParams& params, int uv_h, int uv_w,
          ClipRule clip);

  std::array<std::int64_t, 3> point_shape() const override;
  Tensor to_image(const Tensor& point) const override;
  const Tensor& base_image() const override { return base_; }
  const RasterState* raster() const override { return &raster_; }

  // Projected vertex (x, y) positions, for texture extraction.
  const std::vector<std::array<double, 2>>& projected_xy() const { return projected_xy_; }
  // Sampling coordinates of each vertex in texel space.
  const std::vector<std::array<double, 2>>& uv_coords_texel() const { return uv_texel_; }
  const FaceModel& model() const { return model_; }

  // The base image's own face texture lifted to UV space (image -> vertex
  // colors -> UV, interpolated).
  Tensor extract_base_texture() const;

 private:
  Tensor base_;
  const FaceModel& model_;
  int uv_h_, uv_w_;
  ClipRule clip_;
  RasterState raster_;
  std::vector<std::array<double, 2>> uv_texel_;
  std::vector<std::array<double, 2>> projected_xy_;
};

std::unique_ptr<ImageSpace> make_image_space(const Tensor& attacked_image,
                                             ClipRule clip = ClipRule::off);
std::unique_ptr<UvSpace> make_uv_space(const Tensor& attacked_image, const FaceModel& model,
                                       const AlignmentParams& params, int uv_h, int uv_w,
                                       ClipRule clip = ClipRule::off);

}  // namespace gada
