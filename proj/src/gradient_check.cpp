#include <umbra/gradient_check.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace umbra {

namespace {

double central_diff(const ScalarFn& f, std::vector<double>& x, std::size_t i,
                    double eps) {
  const double saved = x[i];
  x[i] = saved + eps;
  const double hi = f(x);
  x[i] = saved - eps;
  const double lo = f(x);
  x[i] = saved;
  return (hi - lo) / (2.0 * eps);
}

}  // namespace

std::vector<double> fd_gradient(const ScalarFn& f,
                                std::span<const double> params,
                                double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be > 0");
  std::vector<double> x(params.begin(), params.end());
  std::vector<double> grad(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    grad[i] = central_diff(f, x, i, epsilon);
  }
  return grad;
}

GradientCheckReport gradient_check(const ScalarFn& f,
                                   std::span<const double> params,
                                   std::span<const double> analytic,
                                   const GradientCheckOptions& options) {
  if (params.size() != analytic.size()) {
    throw std::invalid_argument("gradient_check: shape mismatch");
  }
  if (!(options.epsilon > 0.0)) {
    throw std::invalid_argument("epsilon must be > 0");
  }

  std::vector<std::size_t> coords(params.size());
  std::iota(coords.begin(), coords.end(), 0);
  if (coords.size() > options.max_coords) {
    std::mt19937_64 rng(options.seed);
    std::shuffle(coords.begin(), coords.end(), rng);
    coords.resize(options.max_coords);
  }

  std::vector<double> x(params.begin(), params.end());
  GradientCheckReport report;
  double total = 0.0;
  for (const std::size_t i : coords) {
    const double fd = central_diff(f, x, i, options.epsilon);
    if (options.skip_kinks) {
      const double fd_half = central_diff(f, x, i, options.epsilon / 2.0);
      const double scale = std::max({std::abs(fd), std::abs(fd_half), 1e-8});
      if (std::abs(fd - fd_half) > 0.05 * scale) {
        ++report.skipped_kinks;
        continue;
      }
    }
    const double rel = std::abs(analytic[i] - fd) /
                       std::max({std::abs(analytic[i]), std::abs(fd), 1e-8});
    total += rel;
    ++report.checked;
    report.max_rel_error = std::max(report.max_rel_error, rel);
    if (rel > options.tolerance) report.failing.push_back(i);
  }
  if (report.checked > 0) {
    report.mean_rel_error = total / static_cast<double>(report.checked);
  }
  return report;
}

}  // namespace umbra
