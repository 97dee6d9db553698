#include "gada/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gada/errors.hpp"
#include "gada/rng.hpp"

namespace gada {

namespace {

std::vector<float> random_projection(std::uint64_t seed, int rows, int cols) {
  std::vector<float> m(static_cast<size_t>(rows) * static_cast<size_t>(cols));
  Rng rng(seed);
  double sd = 1.0 / std::sqrt(static_cast<double>(cols));
  for (auto& v : m) v = static_cast<float>(rng.normal() * sd);
  return m;
}

double vec_norm(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc);
}

}  // namespace

std::vector<double> average_pool(const Tensor& image, int ph, int pw) {
  const int h = static_cast<int>(image.dim(0));
  const int w = static_cast<int>(image.dim(1));
  if (ph < 1 || pw < 1 || ph > h || pw > w)
    throw std::invalid_argument("average_pool: pooling grid exceeds image");

  std::vector<double> pooled(static_cast<size_t>(ph) * pw * 3, 0.0);
  for (int i = 0; i < ph; ++i) {
    int r0 = (i * h) / ph, r1 = ((i + 1) * h) / ph;
    for (int j = 0; j < pw; ++j) {
      int c0 = (j * w) / pw, c1 = ((j + 1) * w) / pw;
      double sum[3] = {0, 0, 0};
      for (int r = r0; r < r1; ++r)
        for (int c = c0; c < c1; ++c)
          for (int ch = 0; ch < 3; ++ch) sum[ch] += image.at(r, c, ch);
      double area = static_cast<double>(r1 - r0) * (c1 - c0);
      for (int ch = 0; ch < 3; ++ch)
        pooled[static_cast<size_t>((i * pw + j) * 3 + ch)] = sum[ch] / area;
    }
  }
  return pooled;
}

Verifier::Verifier(const VerifierConfig& config) : config_(config) {
  if (config.feature_dim < 1) throw std::invalid_argument("Verifier: feature_dim must be >= 1");
  const int cols = config.pool_h * config.pool_w * 3;
  proj_ = random_projection(splitmix64(config.seed ^ 0xFACE0001ULL), config.feature_dim, cols);
  surrogate_proj_ =
      random_projection(splitmix64(config.seed ^ 0x5133D0002ULL), config.feature_dim, cols);
}

bool Verifier::inside_ellipse(int row, int col, int height, int width) const {
  double x = (col + 0.5) / width;
  double y = (row + 0.5) / height;
  double dx = (x - config_.ellipse_cx) / config_.ellipse_rx;
  double dy = (y - config_.ellipse_cy) / config_.ellipse_ry;
  return dx * dx + dy * dy <= 1.0;
}

Feature Verifier::project(const Tensor& image, const std::vector<float>& matrix,
                          bool masked) const {
  const int h = static_cast<int>(image.dim(0));
  const int w = static_cast<int>(image.dim(1));

  std::vector<double> pooled;
  if (masked) {
    Tensor visible = image;
    for (int r = 0; r < h; ++r)
      for (int c = 0; c < w; ++c)
        if (!inside_ellipse(r, c, h, w))
          for (int ch = 0; ch < 3; ++ch) visible.at(r, c, ch) = 0.0f;
    pooled = average_pool(visible, config_.pool_h, config_.pool_w);
  } else {
    pooled = average_pool(image, config_.pool_h, config_.pool_w);
  }

  const size_t cols = pooled.size();
  Feature out(static_cast<size_t>(config_.feature_dim), 0.0);
  for (int d = 0; d < config_.feature_dim; ++d) {
    const float* row = &matrix[static_cast<size_t>(d) * cols];
    double acc = 0.0;
    for (size_t k = 0; k < cols; ++k) acc += static_cast<double>(row[k]) * pooled[k];
    out[static_cast<size_t>(d)] = acc;
  }
  return out;
}

Feature Verifier::embed(const Tensor& image) const { return project(image, proj_, true); }

Feature Verifier::surrogate_feature(const Tensor& image) const {
  Feature f = project(image, surrogate_proj_, false);
  double n = vec_norm(f);
  if (n == 0.0) throw ZeroNormFeature();
  for (double& x : f) x /= n;
  return f;
}

double pair_distance(const Feature& f1, const Feature& f2) {
  if (f1.size() != f2.size()) throw std::invalid_argument("pair_distance: dimension mismatch");
  double n1 = vec_norm(f1), n2 = vec_norm(f2);
  if (n1 == 0.0 || n2 == 0.0) throw ZeroNormFeature();
  double acc = 0.0;
  for (size_t i = 0; i < f1.size(); ++i) {
    double d = f1[i] / n1 - f2[i] / n2;
    acc += d * d;
  }
  return acc;
}

double calibrate_threshold(const std::vector<double>& distances, const std::vector<int>& genuine) {
  if (distances.empty() || distances.size() != genuine.size())
    throw std::invalid_argument("calibrate_threshold: need equal-length nonempty inputs");

  std::vector<double> values = distances;
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  // Accuracy is constant on (v_i, v_{i+1}]; evaluate each interval at its
  // upper end. The two unbounded intervals are clamped so their midpoints are
  // defined; distances live in [0, 4] for normalized features.
  double domain_lo = values.front() >= 0.0 ? 0.0 : values.front() - 1.0;
  double domain_hi = std::max(4.0, values.back() + 1.0);

  auto accuracy_at = [&](double gamma) {
    long correct = 0;
    for (size_t i = 0; i < distances.size(); ++i) {
      int predicted = distances[i] < gamma ? 1 : 0;
      if (predicted == genuine[i]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(distances.size());
  };

  double best_acc = -1.0;
  double best_gamma = domain_lo;
  for (size_t i = 0; i <= values.size(); ++i) {
    double lo = i == 0 ? domain_lo : values[i - 1];
    double hi = i == values.size() ? domain_hi : values[i];
    // Probe gamma = hi covers the whole half-open interval; for the leading
    // interval gamma = v_0 predicts no pair genuine, as intended.
    double acc = accuracy_at(hi);
    if (acc > best_acc) {
      best_acc = acc;
      best_gamma = 0.5 * (lo + hi);
    }
  }
  return best_gamma;
}

std::vector<double> similarity_embed(const Tensor& image) {
  std::vector<double> pooled = average_pool(image, 8, 8);
  double n = vec_norm(pooled);
  if (n == 0.0) throw ZeroNormFeature();
  for (double& x : pooled) x /= n;
  return pooled;
}

HardLabelOracle::HardLabelOracle(const Verifier& verifier, const Tensor& enrolled_image,
                                 const Tensor& original_image, long budget)
    : verifier_(verifier),
      enrolled_feature_(verifier.embed(enrolled_image)),
      gamma_(verifier.config().gamma),
      budget_(budget) {
  original_label_ = label_of(original_image);
}

int HardLabelOracle::label_of(const Tensor& image) const {
  return pair_distance(verifier_.embed(image), enrolled_feature_) < gamma_ ? 1 : 0;
}

int HardLabelOracle::verify(const Tensor& image) {
  if (queries_ >= budget_) throw BudgetExhausted();
  int label = label_of(image);
  ++queries_;
  return label;
}

int HardLabelOracle::peek_label(const Tensor& image) const { return label_of(image); }

}  // namespace gada
