#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace umbra {

using ScalarFn = std::function<double(std::span<const double>)>;

// Central-difference gradient of f at params, all coordinates.
std::vector<double> fd_gradient(const ScalarFn& f,
                                std::span<const double> params,
                                double epsilon);

struct GradientCheckReport {
  double max_rel_error = 0.0;
  double mean_rel_error = 0.0;
  std::size_t checked = 0;
  std::size_t skipped_kinks = 0;
  std::vector<std::size_t> failing;  // indices with rel error > tolerance

  bool ok() const { return failing.empty(); }
};

struct GradientCheckOptions {
  double epsilon = 1e-5;
  double tolerance = 1e-3;
  std::size_t max_coords = 64;  // random subset size (all if fewer params)
  std::uint64_t seed = 0;
  // Compare the epsilon and epsilon/2 difference estimates and skip
  // coordinates where they disagree: f is not smooth there (an L1 kink or a
  // closest-feature switch) and central differences are meaningless.
  bool skip_kinks = false;
};

// Central differences on a random coordinate subset vs analytic gradients.
// Relative error per coordinate: |a - f| / max(|a|, |f|, 1e-8).
GradientCheckReport gradient_check(const ScalarFn& f,
                                   std::span<const double> params,
                                   std::span<const double> analytic,
                                   const GradientCheckOptions& options);

}  // namespace umbra
