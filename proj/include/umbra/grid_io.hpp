#pragma once

#include <umbra/voxel_grid.hpp>

#include <string>

namespace umbra {

// Little-endian binary grid file: "UMBRAGRD" magic, u32 version, u32
// resolution, f64 extent, f64 fixed_color, then resolution^3 f64 logits.
void save_grid(const VoxelGrid& grid, const std::string& path);
VoxelGrid load_grid(const std::string& path);

}  // namespace umbra
