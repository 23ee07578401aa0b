#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "handover/matrix.hpp"
#include "handover/rng.hpp"

namespace handover {

inline constexpr double kLogStdMin = -20.0;
inline constexpr double kLogStdMax = 2.0;
inline const double kLogTwoPi = std::log(2.0 * std::numbers::pi);

inline double clamp_log_std(double ls) {
  return ls < kLogStdMin ? kLogStdMin : (ls > kLogStdMax ? kLogStdMax : ls);
}

struct GaussianSample {
  Vec action;
  double log_prob = 0.0;
  double entropy = 0.0;
};

// Diagonal-Gaussian log density of `action` under (mean, log_std).
inline double gaussian_log_prob(const Vec& mean, const Vec& log_std,
                                const Vec& action) {
  double lp = 0.0;
  for (std::size_t i = 0; i < mean.size(); ++i) {
    const double ls = clamp_log_std(log_std[i]);
    const double z = (action[i] - mean[i]) * std::exp(-ls);
    lp += -0.5 * z * z - ls - 0.5 * kLogTwoPi;
  }
  return lp;
}

inline double gaussian_entropy(const Vec& log_std) {
  double h = 0.0;
  for (double ls : log_std) h += 0.5 + 0.5 * kLogTwoPi + clamp_log_std(ls);
  return h;
}

// Samples an action and returns exact closed-form log-prob and entropy.
inline GaussianSample gaussian_head(const Vec& mean, const Vec& log_std,
                                    Rng& rng) {
  if (mean.size() != log_std.size())
    throw std::invalid_argument("gaussian_head: mean/log_std length mismatch");
  GaussianSample s;
  s.action.resize(mean.size());
  for (std::size_t i = 0; i < mean.size(); ++i) {
    const double std = std::exp(clamp_log_std(log_std[i]));
    s.action[i] = mean[i] + std * rng.normal();
  }
  s.log_prob = gaussian_log_prob(mean, log_std, s.action);
  s.entropy = gaussian_entropy(log_std);
  return s;
}

}  // namespace handover
