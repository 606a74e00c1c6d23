#include <umbra/voxel_grid.hpp>

#include <cmath>
#include <stdexcept>

namespace umbra {

VoxelGrid::VoxelGrid(int resolution, double extent, double init_logit)
    : resolution(resolution), extent(extent) {
  if (resolution < 2) {
    throw std::invalid_argument("voxel grid resolution must be >= 2");
  }
  if (!(extent > 0.0)) {
    throw std::invalid_argument("voxel grid extent must be positive");
  }
  if (!std::isfinite(init_logit)) {
    throw std::invalid_argument("init logit must be finite");
  }
  logits.assign(static_cast<std::size_t>(resolution) * resolution * resolution,
                init_logit);
}

std::vector<double> densities(const VoxelGrid& grid) {
  std::vector<double> out(grid.logits.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = sigmoid(grid.logits[i]);
  }
  return out;
}

}  // namespace umbra
