#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "handover/mlp.hpp"

namespace handover {

// Bias-corrected Adam. Moment buffers mirror the parameter shapes.
struct AdamState {
  int64_t step = 0;
  MlpParameters m;
  MlpParameters v;
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

inline AdamState make_adam(const MlpParameters& params, double lr,
                           double eps = 1e-8, double beta1 = 0.9,
                           double beta2 = 0.999) {
  AdamState s;
  s.m = zeros_like(params);
  s.v = zeros_like(params);
  s.lr = lr;
  s.eps = eps;
  s.beta1 = beta1;
  s.beta2 = beta2;
  return s;
}

// One Adam update in place. Rejects non-finite gradients without touching
// the parameters or the optimizer state.
inline void adam_step(AdamState& state, MlpParameters& params,
                      const MlpParameters& grads) {
  bool finite = true;
  for_each_param(const_cast<MlpParameters&>(grads),
                 [&](double& g) { finite = finite && std::isfinite(g); });
  if (!finite)
    throw std::runtime_error("adam_step: non-finite gradient, update rejected");

  state.step += 1;
  const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));

  auto update = [&](double* p, const double* g, double* m, double* v,
                    std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
      m[j] = state.beta1 * m[j] + (1.0 - state.beta1) * g[j];
      v[j] = state.beta2 * v[j] + (1.0 - state.beta2) * g[j] * g[j];
      const double mhat = m[j] / bc1;
      const double vhat = v[j] / bc2;
      p[j] -= state.lr * mhat / (std::sqrt(vhat) + state.eps);
    }
  };

  for (std::size_t l = 0; l < params.weights.size(); ++l)
    update(params.weights[l].data.data(), grads.weights[l].data.data(),
           state.m.weights[l].data.data(), state.v.weights[l].data.data(),
           params.weights[l].data.size());
  for (std::size_t l = 0; l < params.biases.size(); ++l)
    update(params.biases[l].data(), grads.biases[l].data(),
           state.m.biases[l].data(), state.v.biases[l].data(),
           params.biases[l].size());
  if (!params.log_std.empty())
    update(params.log_std.data(), grads.log_std.data(),
           state.m.log_std.data(), state.v.log_std.data(),
           params.log_std.size());
}

}  // namespace handover
