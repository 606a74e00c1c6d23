#pragma once

#include <umbra/image.hpp>
#include <umbra/shadow_config.hpp>
#include <umbra/voxel_grid.hpp>

#include <cstdint>
#include <vector>

namespace umbra {

struct BinaryOccupancy {
  int resolution = 0;
  double extent = 0.0;
  std::vector<std::uint8_t> occupied;  // x fastest, then y, then z

  BinaryOccupancy() = default;
  BinaryOccupancy(int resolution, double extent)
      : resolution(resolution),
        extent(extent),
        occupied(static_cast<std::size_t>(resolution) * resolution *
                     resolution,
                 0) {}

  std::size_t index(int x, int y, int z) const {
    return (static_cast<std::size_t>(z) * resolution + y) * resolution + x;
  }

  std::size_t count() const;

  // World position of the voxel center.
  Vec3 center(int x, int y, int z) const {
    const double h = extent / resolution;
    const double half = extent / 2.0;
    return {-half + (x + 0.5) * h, -half + (y + 0.5) * h, -half + (z + 0.5) * h};
  }
};

// Space carving: a voxel survives iff its center projects onto a foreground
// pixel (nearest-pixel lookup) in every view; projections falling outside
// any image remove the voxel.
BinaryOccupancy carve_visual_hull(const std::vector<ShadowConfiguration>& views,
                                  int resolution, double extent);

// Binary silhouette of an occupancy under the same nearest-pixel projection
// that carve_visual_hull tests, so carve-then-render round-trips exactly.
Image occupancy_silhouette(const BinaryOccupancy& occupancy,
                           const Camera& camera);

// Logit field from an occupancy, for seeding the voxel optimizer.
VoxelGrid grid_from_occupancy(const BinaryOccupancy& occupancy,
                              double inside_logit = 3.0,
                              double outside_logit = -3.0);

}  // namespace umbra
