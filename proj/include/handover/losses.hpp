#pragma once

#include <cmath>
#include <stdexcept>

namespace handover {

// Huber loss: quadratic for |e| <= delta, linear outside, C1 at the knee.
inline double huber(double pred, double target, double delta) {
  if (delta <= 0.0) throw std::invalid_argument("huber: delta must be > 0");
  const double e = std::abs(pred - target);
  if (e <= delta) return 0.5 * e * e;
  return delta * (e - 0.5 * delta);
}

// d huber / d pred
inline double huber_grad(double pred, double target, double delta) {
  const double e = pred - target;
  if (std::abs(e) <= delta) return e;
  return e > 0.0 ? delta : -delta;
}

}  // namespace handover
