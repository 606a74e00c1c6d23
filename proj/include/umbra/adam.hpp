#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace umbra {

// Bias-corrected Adam. Moment buffers are parameter-shaped.
struct AdamState {
  std::vector<double> m;  // first moment
  std::vector<double> v;  // second moment
  long step = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double lr = 1e-3;

  AdamState(std::size_t param_count, double learning_rate)
      : m(param_count, 0.0), v(param_count, 0.0), lr(learning_rate) {}
};

// One in-place update. Throws on shape mismatch or non-finite gradients.
void adam_step(std::span<double> params, std::span<const double> grads,
               AdamState& state);

}  // namespace umbra
