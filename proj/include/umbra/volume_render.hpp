#pragma once

#include <umbra/camera.hpp>
#include <umbra/image.hpp>
#include <umbra/voxel_grid.hpp>

#include <cstdint>
#include <vector>

namespace umbra {

struct RenderSettings {
  int samples_per_ray = 2;      // >= 2
  bool step_jitter = false;     // uniform jitter inside each sample bin
  double opacity_scale = 1.0;   // kappa, > 0
  std::uint64_t jitter_seed = 0;
  int threads = 1;
};

// samples_per_ray = 2*D (sub-voxel spacing), kappa = 30/extent so a
// density-1 path across one voxel is already substantially opaque.
RenderSettings default_render_settings(const VoxelGrid& grid);

// Absorption-only compositing along each pixel ray clipped to the grid cube:
// alpha_k = 1 - exp(-kappa * d_k * dt), pixel = 1 - prod_k (1 - alpha_k),
// with d_k trilinearly interpolated from voxel-center densities. Rays that
// miss the cube render 0.
Image render_silhouette(const VoxelGrid& grid, const Camera& camera,
                        const RenderSettings& settings);

// Adjoint of render_silhouette composed with the sigmoid squashing:
// accumulates d(sum upstream*pixel)/d(logit) over all pixels and samples.
// Single-threaded accumulation is the bit-reproducible reference; with more
// threads, per-worker buffers are reduced in fixed worker order.
std::vector<double> render_silhouette_backward(const VoxelGrid& grid,
                                               const Camera& camera,
                                               const RenderSettings& settings,
                                               const Image& upstream);

}  // namespace umbra
