#pragma once

#include <cstdint>
#include <vector>

#include "gada/tensor.hpp"

namespace gada {

using Feature = std::vector<double>;

struct VerifierConfig {
  std::uint64_t seed = 7;
  int feature_dim = 128;
  int pool_h = 16;
  int pool_w = 16;
  // Central ellipse in relative image coordinates; pixels outside it are
  // invisible to the verifier.
  double ellipse_cx = 0.5;
  double ellipse_cy = 0.45;
  double ellipse_rx = 0.35;
  double ellipse_ry = 0.42;
  double gamma = 0.5;
};

// Toy face encoder: ellipse-mask, average-pool, fixed random projection.
// Deterministic for a fixed seed; linear in the image.
class Verifier {
 public:
  explicit Verifier(const VerifierConfig& config);

  Feature embed(const Tensor& image) const;

  // Same construction with a different seed, no ellipse mask, L2-normalized.
  // Used for dictionary keys (the attacker-side network differs from the
  // target's).
  Feature surrogate_feature(const Tensor& image) const;

  const VerifierConfig& config() const { return config_; }
  bool inside_ellipse(int row, int col, int height, int width) const;

 private:
  Feature project(const Tensor& image, const std::vector<float>& matrix, bool masked) const;

  VerifierConfig config_;
  std::vector<float> proj_;            // D x (pool_h*pool_w*3)
  std::vector<float> surrogate_proj_;
};

// Squared distance of L2-normalized features; range [0, 4]. Throws
// ZeroNormFeature when either norm is zero.
double pair_distance(const Feature& f1, const Feature& f2);

// Threshold maximizing 0/1 accuracy under predict-genuine iff distance <
// gamma; among optimal thresholds, the midpoint of the (first) optimal
// interval. genuine[i] is 1 for genuine pairs, 0 for impostors.
double calibrate_threshold(const std::vector<double>& distances, const std::vector<int>& genuine);

// Perceptual-similarity stand-in for the detector: average-pool to 8x8x3,
// flatten, L2-normalize. Throws ZeroNormFeature on an all-zero image.
std::vector<double> similarity_embed(const Tensor& image);

// Average pooling over ph x pw cells, channels kept; helper shared by the
// verifier and the similarity embedding.
std::vector<double> average_pool(const Tensor& image, int ph, int pw);

// Label-only query interface the attack stack drives. Real target plus test
// fakes implement it.
class LabelOracle {
 public:
  virtual ~LabelOracle() = default;
  virtual int verify(const Tensor& image) = 0;  // counts one query
  virtual int original_label() const = 0;
  virtual long queries_used() const = 0;
  virtual long budget() const = 0;

  long remaining() const { return budget() - queries_used(); }
  bool adversarial(int label) const { return label != original_label(); }
};

// The black-box target: holds the enrolled identity's feature privately and
// exposes hard labels with query counting.
class HardLabelOracle final : public LabelOracle {
 public:
  HardLabelOracle(const Verifier& verifier, const Tensor& enrolled_image,
                  const Tensor& original_image, long budget);

  int verify(const Tensor& image) override;
  int original_label() const override { return original_label_; }
  long queries_used() const override { return queries_; }
  long budget() const override { return budget_; }

  // Label without consuming budget. For invariant checks and re-verification
  // only; attack code must not call it.
  int peek_label(const Tensor& image) const;

 private:
  int label_of(const Tensor& image) const;

  const Verifier& verifier_;
  Feature enrolled_feature_;  // the enrolled image itself is never retained
  double gamma_;
  long budget_;
  long queries_ = 0;
  int original_label_;
};

}  // namespace gada
