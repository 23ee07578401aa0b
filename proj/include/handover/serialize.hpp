#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "handover/mlp.hpp"

namespace handover {

static_assert(std::endian::native == std::endian::little,
              "parameter streams are little-endian; big-endian hosts need a swap");

// Byte layout (all little-endian):
//   u32  layer count N
//   N*u32 layer sizes
//   (N-2)*u8 hidden activation tags (0 = tanh, 1 = relu)
//   u8   log_std present flag
//   f64  stream: weights row-major in layer order, then biases, then log_std
namespace io {

inline void put_u32(std::ostream& os, uint32_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}
inline void put_u64(std::ostream& os, uint64_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}
inline void put_f64(std::ostream& os, double v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}
inline uint32_t get_u32(std::istream& is) {
  uint32_t v = 0;
  is.read(reinterpret_cast<char*>(&v), sizeof(v));
  if (!is) throw std::runtime_error("parameter stream truncated");
  return v;
}
inline uint64_t get_u64(std::istream& is) {
  uint64_t v = 0;
  is.read(reinterpret_cast<char*>(&v), sizeof(v));
  if (!is) throw std::runtime_error("parameter stream truncated");
  return v;
}
inline double get_f64(std::istream& is) {
  double v = 0;
  is.read(reinterpret_cast<char*>(&v), sizeof(v));
  if (!is) throw std::runtime_error("parameter stream truncated");
  return v;
}

}  // namespace io

inline void write_mlp(std::ostream& os, const MlpParameters& p) {
  io::put_u32(os, static_cast<uint32_t>(p.layer_sizes.size()));
  for (std::size_t s : p.layer_sizes) io::put_u32(os, static_cast<uint32_t>(s));
  for (Activation a : p.activations)
    os.put(a == Activation::Tanh ? '\0' : '\1');
  os.put(p.log_std.empty() ? '\0' : '\1');
  for (const auto& w : p.weights)
    for (double v : w.data) io::put_f64(os, v);
  for (const auto& b : p.biases)
    for (double v : b) io::put_f64(os, v);
  for (double v : p.log_std) io::put_f64(os, v);
}

inline MlpParameters read_mlp(std::istream& is) {
  const uint32_t n = io::get_u32(is);
  if (n < 2 || n > 64) throw std::runtime_error("parameter stream: bad layer count");
  MlpParameters p;
  p.layer_sizes.resize(n);
  for (auto& s : p.layer_sizes) s = io::get_u32(is);
  p.activations.resize(n - 2);
  for (auto& a : p.activations) {
    const int c = is.get();
    if (c < 0) throw std::runtime_error("parameter stream truncated");
    a = c == 0 ? Activation::Tanh : Activation::Relu;
  }
  const int has_log_std = is.get();
  if (has_log_std < 0) throw std::runtime_error("parameter stream truncated");
  for (std::size_t i = 0; i + 1 < n; ++i) {
    p.weights.emplace_back(p.layer_sizes[i + 1], p.layer_sizes[i]);
    p.biases.emplace_back(p.layer_sizes[i + 1], 0.0);
  }
  for (auto& w : p.weights)
    for (double& v : w.data) v = io::get_f64(is);
  for (auto& b : p.biases)
    for (double& v : b) v = io::get_f64(is);
  if (has_log_std) {
    p.log_std.resize(p.layer_sizes.back());
    for (double& v : p.log_std) v = io::get_f64(is);
  }
  detail::check_topology(p);
  return p;
}

// FNV-1a over the serialized byte stream; used for checkpoint lineage.
inline uint64_t fnv1a(const std::string& bytes) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace handover
