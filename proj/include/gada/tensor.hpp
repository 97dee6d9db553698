#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace gada {

// Dense row-major float tensor. Images are (H, W, 3) in [0, 1]; UV textures
// are (H, W, 3) signed; flat feature blocks are (N, D).
struct Tensor {
  std::vector<std::int64_t> shape;
  std::vector<float> data;

  Tensor() = default;
  Tensor(std::initializer_list<std::int64_t> s) : shape(s) { data.assign(numel(shape), 0.0f); }
  explicit Tensor(std::vector<std::int64_t> s) : shape(std::move(s)) { data.assign(numel(shape), 0.0f); }

  static std::int64_t numel(const std::vector<std::int64_t>& s) {
    std::int64_t n = 1;
    for (auto d : s) n *= d;
    return n;
  }

  std::int64_t size() const { return static_cast<std::int64_t>(data.size()); }
  bool empty() const { return data.empty(); }
  std::int64_t dim(int i) const { return shape[static_cast<size_t>(i)]; }

  // (row, col, channel) accessor for rank-3 tensors.
  float& at(std::int64_t r, std::int64_t c, std::int64_t ch) {
    return data[static_cast<size_t>((r * shape[1] + c) * shape[2] + ch)];
  }
  float at(std::int64_t r, std::int64_t c, std::int64_t ch) const {
    return data[static_cast<size_t>((r * shape[1] + c) * shape[2] + ch)];
  }

  bool same_shape(const Tensor& o) const { return shape == o.shape; }
};

inline void clip01_inplace(Tensor& t) {
  for (float& v : t.data) v = v < 0.0f ? 0.0f : (v > 1.0f ? 1.0f : v);
}

double l2_diff(const Tensor& a, const Tensor& b);
double linf_diff(const Tensor& a, const Tensor& b);

// --- shared tensor-file format -------------------------------------------
//
// One UTF-8 JSON header line, `\n`, then each tensor's little-endian payload
// in declared order. dtype is "f32" or "i32". The header may carry a "meta"
// object for small string metadata (e.g. a dictionary policy).

struct NamedTensor {
  enum class Dtype { f32, i32 };
  std::string name;
  Dtype dtype = Dtype::f32;
  std::vector<std::int64_t> shape;
  std::vector<float> f32;
  std::vector<std::int32_t> i32;

  static NamedTensor from_tensor(const std::string& name, const Tensor& t) {
    NamedTensor n;
    n.name = name;
    n.dtype = Dtype::f32;
    n.shape = t.shape;
    n.f32 = t.data;
    return n;
  }
  Tensor to_tensor() const {
    Tensor t;
    t.shape = shape;
    t.data = f32;
    return t;
  }
};

struct TensorFile {
  std::vector<NamedTensor> tensors;
  std::vector<std::pair<std::string, std::string>> meta;

  const NamedTensor* find(const std::string& name) const;
  const NamedTensor& require(const std::string& name) const;
  const std::string* meta_value(const std::string& key) const;
};

void save_tensor_file(const std::string& path, const TensorFile& file);
TensorFile load_tensor_file(const std::string& path);

}  // namespace gada
