#include "gada/tensor.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "gada/errors.hpp"

namespace gada {

double l2_diff(const Tensor& a, const Tensor& b) {
  double acc = 0.0;
  for (size_t i = 0; i < a.data.size(); ++i) {
    double d = static_cast<double>(a.data[i]) - static_cast<double>(b.data[i]);
    acc += d * d;
  }
  return std::sqrt(acc);
}

double linf_diff(const Tensor& a, const Tensor& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.data.size(); ++i) {
    double d = std::fabs(static_cast<double>(a.data[i]) - static_cast<double>(b.data[i]));
    if (d > m) m = d;
  }
  return m;
}

const NamedTensor* TensorFile::find(const std::string& name) const {
  for (const auto& t : tensors)
    if (t.name == name) return &t;
  return nullptr;
}

const NamedTensor& TensorFile::require(const std::string& name) const {
  const NamedTensor* t = find(name);
  if (!t) throw IoError("tensor file is missing tensor '" + name + "'");
  return *t;
}

const std::string* TensorFile::meta_value(const std::string& key) const {
  for (const auto& kv : meta)
    if (kv.first == key) return &kv.second;
  return nullptr;
}

namespace {

// Payloads are raw little-endian; this code assumes a little-endian host
// (checked once at load/save).
void check_endianness() {
  const std::uint32_t probe = 1;
  unsigned char b;
  std::memcpy(&b, &probe, 1);
  if (b != 1) throw IoError("tensor files require a little-endian host");
}

}  // namespace

void save_tensor_file(const std::string& path, const TensorFile& file) {
  check_endianness();
  nlohmann::json header;
  header["tensors"] = nlohmann::json::array();
  for (const auto& t : file.tensors) {
    nlohmann::json jt;
    jt["name"] = t.name;
    jt["dtype"] = t.dtype == NamedTensor::Dtype::f32 ? "f32" : "i32";
    jt["shape"] = t.shape;
    header["tensors"].push_back(jt);
  }
  if (!file.meta.empty()) {
    nlohmann::json jm;
    for (const auto& kv : file.meta) jm[kv.first] = kv.second;
    header["meta"] = jm;
  }

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << header.dump() << "\n";
  for (const auto& t : file.tensors) {
    std::int64_t n = Tensor::numel(t.shape);
    if (t.dtype == NamedTensor::Dtype::f32) {
      if (static_cast<std::int64_t>(t.f32.size()) != n)
        throw IoError("tensor '" + t.name + "' payload does not match its shape");
      out.write(reinterpret_cast<const char*>(t.f32.data()),
                static_cast<std::streamsize>(n * 4));
    } else {
      if (static_cast<std::int64_t>(t.i32.size()) != n)
        throw IoError("tensor '" + t.name + "' payload does not match its shape");
      out.write(reinterpret_cast<const char*>(t.i32.data()),
                static_cast<std::streamsize>(n * 4));
    }
  }
  if (!out) throw IoError("write failed: " + path);
}

TensorFile load_tensor_file(const std::string& path) {
  check_endianness();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  std::string header_line;
  if (!std::getline(in, header_line)) throw IoError("missing header line: " + path);

  nlohmann::json header = nlohmann::json::parse(header_line);
  TensorFile file;
  if (header.contains("meta")) {
    for (auto it = header["meta"].begin(); it != header["meta"].end(); ++it)
      file.meta.emplace_back(it.key(), it.value().get<std::string>());
  }
  for (const auto& jt : header.at("tensors")) {
    NamedTensor t;
    t.name = jt.at("name").get<std::string>();
    std::string dtype = jt.at("dtype").get<std::string>();
    if (dtype == "f32")
      t.dtype = NamedTensor::Dtype::f32;
    else if (dtype == "i32")
      t.dtype = NamedTensor::Dtype::i32;
    else
      throw IoError("unknown dtype '" + dtype + "' in " + path);
    t.shape = jt.at("shape").get<std::vector<std::int64_t>>();
    std::int64_t n = Tensor::numel(t.shape);
    if (t.dtype == NamedTensor::Dtype::f32) {
      t.f32.resize(static_cast<size_t>(n));
      in.read(reinterpret_cast<char*>(t.f32.data()), static_cast<std::streamsize>(n * 4));
    } else {
      t.i32.resize(static_cast<size_t>(n));
      in.read(reinterpret_cast<char*>(t.i32.data()), static_cast<std::streamsize>(n * 4));
    }
    if (!in && n > 0) throw IoError("truncated tensor payload in " + path);
    file.tensors.push_back(std::move(t));
  }
  return file;
}

}  // namespace gada
