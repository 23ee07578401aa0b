#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "handover/matrix.hpp"
#include "handover/rng.hpp"

namespace handover {

enum class Activation { Tanh, Relu };

// Dense MLP parameters. weights[i] maps layer i (cols) to layer i+1 (rows).
// Hidden layers use activations[i]; the output layer is linear. log_std is
// present on actor networks only (state-independent, learnable).
struct MlpParameters {
  std::vector<std::size_t> layer_sizes;
  std::vector<Matrix> weights;
  std::vector<Vec> biases;
  std::vector<Activation> activations;
  Vec log_std;

  std::size_t input_size() const { return layer_sizes.front(); }
  std::size_t output_size() const { return layer_sizes.back(); }
  std::size_t num_layers() const { return weights.size(); }
};

namespace detail {

inline void check_topology(const MlpParameters& p) {
  if (p.layer_sizes.size() < 2) throw std::invalid_argument("mlp: need >= 2 layers");
  const std::size_t n = p.layer_sizes.size() - 1;
  if (p.weights.size() != n || p.biases.size() != n ||
      p.activations.size() != n - 1)
    throw std::invalid_argument("mlp: inconsistent parameter counts");
  for (std::size_t i = 0; i < n; ++i) {
    if (p.weights[i].rows != p.layer_sizes[i + 1] ||
        p.weights[i].cols != p.layer_sizes[i] ||
        p.biases[i].size() != p.layer_sizes[i + 1])
      throw std::invalid_argument("mlp: layer " + std::to_string(i) + " shape mismatch");
  }
  if (!p.log_std.empty() && p.log_std.size() != p.layer_sizes.back())
    throw std::invalid_argument("mlp: log_std length mismatch");
}

}  // namespace detail

// Per-layer activations captured during forward, reused by the backward pass.
struct ForwardCache {
  std::vector<Vec> post;  // post[0] = input, post[i] = output of layer i
};

inline Vec mlp_forward(const MlpParameters& p, const Vec& input,
                       ForwardCache* cache = nullptr) {
  if (input.size() != p.input_size())
    throw std::invalid_argument("mlp_forward: input size " +
                                std::to_string(input.size()) + " != " +
                                std::to_string(p.input_size()));
  if (cache) {
    cache->post.resize(p.num_layers() + 1);
    cache->post[0] = input;
  }
  Vec cur = input;
  Vec next;
  for (std::size_t i = 0; i < p.num_layers(); ++i) {
    next.assign(p.layer_sizes[i + 1], 0.0);
    matvec(p.weights[i], cur.data(), next.data());
    for (std::size_t j = 0; j < next.size(); ++j) next[j] += p.biases[i][j];
    const bool hidden = i + 1 < p.num_layers();
    if (hidden) {
      if (p.activations[i] == Activation::Tanh)
        for (double& v : next) v = std::tanh(v);
      else
        for (double& v : next) v = v > 0.0 ? v : 0.0;
    }
    cur = next;
    if (cache) cache->post[i + 1] = cur;
  }
  return cur;
}

inline MlpParameters zeros_like(const MlpParameters& p) {
  MlpParameters g;
  g.layer_sizes = p.layer_sizes;
  g.activations = p.activations;
  g.weights.reserve(p.weights.size());
  g.biases.reserve(p.biases.size());
  for (const auto& w : p.weights) g.weights.emplace_back(w.rows, w.cols);
  for (const auto& b : p.biases) g.biases.emplace_back(b.size(), 0.0);
  g.log_std.assign(p.log_std.size(), 0.0);
  return g;
}

// Accumulates d(upstream . output)/d(params) into grads; optionally returns
// the gradient w.r.t. the network input (used by the joint fine-tuning path).
inline void mlp_backward_accumulate(const MlpParameters& p,
                                    const ForwardCache& cache,
                                    const Vec& upstream, MlpParameters& grads,
                                    Vec* input_grad = nullptr) {
  if (upstream.size() != p.output_size())
    throw std::invalid_argument("mlp_backward: upstream size mismatch");
  Vec delta = upstream;
  for (std::size_t li = p.num_layers(); li-- > 0;) {
    const bool hidden = li + 1 < p.num_layers();
    if (hidden) {
      const Vec& post = cache.post[li + 1];
      if (p.activations[li] == Activation::Tanh) {
        for (std::size_t j = 0; j < delta.size(); ++j)
          delta[j] *= 1.0 - post[j] * post[j];
      } else {
        for (std::size_t j = 0; j < delta.size(); ++j)
          if (post[j] <= 0.0) delta[j] = 0.0;
      }
    }
    add_outer(grads.weights[li], delta.data(), cache.post[li].data());
    for (std::size_t j = 0; j < delta.size(); ++j) grads.biases[li][j] += delta[j];
    if (li > 0 || input_grad) {
      Vec prev(p.layer_sizes[li], 0.0);
      matvec_transpose_add(p.weights[li], delta.data(), prev.data());
      if (li == 0) {
        if (input_grad) {
          input_grad->resize(prev.size());
          for (std::size_t j = 0; j < prev.size(); ++j)
            (*input_grad)[j] += prev[j];
        }
        break;
      }
      delta = std::move(prev);
    }
  }
}

// Gradient of (upstream . output) w.r.t. every parameter.
inline MlpParameters mlp_gradient(const MlpParameters& p, const Vec& input,
                                  const Vec& upstream,
                                  Vec* input_grad = nullptr) {
  ForwardCache cache;
  mlp_forward(p, input, &cache);
  MlpParameters grads = zeros_like(p);
  if (input_grad) input_grad->assign(p.input_size(), 0.0);
  mlp_backward_accumulate(p, cache, upstream, grads, input_grad);
  return grads;
}

// Applies fn to every parameter entry of a and the matching entry of b.
template <typename A, typename B, typename F>
void for_each_param(A& a, B& b, F fn) {
  for (std::size_t i = 0; i < a.weights.size(); ++i)
    for (std::size_t j = 0; j < a.weights[i].data.size(); ++j)
      fn(a.weights[i].data[j], b.weights[i].data[j]);
  for (std::size_t i = 0; i < a.biases.size(); ++i)
    for (std::size_t j = 0; j < a.biases[i].size(); ++j)
      fn(a.biases[i][j], b.biases[i][j]);
  for (std::size_t j = 0; j < a.log_std.size(); ++j)
    fn(a.log_std[j], b.log_std[j]);
}

template <typename A, typename F>
void for_each_param(A& a, F fn) {
  for (auto& w : a.weights)
    for (auto& v : w.data) fn(v);
  for (auto& b : a.biases)
    for (auto& v : b) fn(v);
  for (auto& v : a.log_std) fn(v);
}

inline std::size_t param_count(const MlpParameters& p) {
  std::size_t n = p.log_std.size();
  for (const auto& w : p.weights) n += w.data.size();
  for (const auto& b : p.biases) n += b.size();
  return n;
}

inline double global_grad_norm(const MlpParameters& g) {
  double sq = 0.0;
  for_each_param(const_cast<MlpParameters&>(g), [&](double& v) { sq += v * v; });
  return std::sqrt(sq);
}

inline void scale_params(MlpParameters& g, double s) {
  for_each_param(g, [&](double& v) { v *= s; });
}

namespace detail {

// Orthogonal rows (or columns when rows > cols) via modified Gram-Schmidt.
inline Matrix orthogonal_matrix(std::size_t rows, std::size_t cols, double gain,
                                Rng& rng) {
  const bool tall = rows > cols;
  const std::size_t n = tall ? cols : rows;   // vectors to orthonormalize
  const std::size_t dim = tall ? rows : cols; // their length
  std::vector<Vec> basis(n, Vec(dim));
  for (auto& v : basis)
    for (double& x : v) x = rng.normal();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < i; ++k) {
      double proj = 0.0;
      for (std::size_t j = 0; j < dim; ++j) proj += basis[i][j] * basis[k][j];
      for (std::size_t j = 0; j < dim; ++j) basis[i][j] -= proj * basis[k][j];
    }
    double nrm = 0.0;
    for (double x : basis[i]) nrm += x * x;
    nrm = std::sqrt(nrm);
    if (nrm < 1e-12) nrm = 1.0;
    for (double& x : basis[i]) x /= nrm;
  }
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      m(r, c) = gain * (tall ? basis[c][r] : basis[r][c]);
  return m;
}

}  // namespace detail

// Orthogonal-initialized MLP; output layer scaled by output_gain (small for
// actor means, 1 for critics), biases zero.
inline MlpParameters make_mlp(const std::vector<std::size_t>& layer_sizes,
                              Activation hidden_activation, Rng& rng,
                              double hidden_gain = std::sqrt(2.0),
                              double output_gain = 1.0,
                              double init_log_std = 0.0,
                              bool with_log_std = false) {
  MlpParameters p;
  p.layer_sizes = layer_sizes;
  for (std::size_t i = 0; i + 1 < layer_sizes.size(); ++i) {
    const bool hidden = i + 2 < layer_sizes.size();
    p.weights.push_back(detail::orthogonal_matrix(
        layer_sizes[i + 1], layer_sizes[i], hidden ? hidden_gain : output_gain,
        rng));
    p.biases.emplace_back(layer_sizes[i + 1], 0.0);
    if (hidden) p.activations.push_back(hidden_activation);
  }
  if (with_log_std) p.log_std.assign(layer_sizes.back(), init_log_std);
  return p;
}

}  // namespace handover
