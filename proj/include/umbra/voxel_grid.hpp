#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace umbra {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Learnable logit field over a D x D x D lattice filling a cube of the given
// side length centered at the world origin. Densities are the sigmoid of the
// logits, so they live in (0, 1); density samples sit at voxel centers.
struct VoxelGrid {
  int resolution = 0;
  double extent = 0.0;
  double fixed_color = 1.0;
  std::vector<double> logits;  // x fastest, then y, then z

  VoxelGrid() = default;
  VoxelGrid(int resolution, double extent, double init_logit = 1.0);

  double spacing() const { return extent / resolution; }

  std::size_t index(int x, int y, int z) const {
    return (static_cast<std::size_t>(z) * resolution + y) * resolution + x;
  }

  std::size_t voxel_count() const { return logits.size(); }
};

// Elementwise sigmoid of the logit field.
std::vector<double> densities(const VoxelGrid& grid);

}  // namespace umbra
