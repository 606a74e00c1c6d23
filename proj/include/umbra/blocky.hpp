#pragma once

#include <umbra/trimesh.hpp>
#include <umbra/voxel_grid.hpp>

namespace umbra {

// Axis-aligned cube-face mesh of all voxels with density > iso. Faces shared
// by two above-iso voxels are dropped; corners are welded. Returns an empty
// mesh when nothing exceeds iso. The result is edge-manifold for any grid:
// every edge lies on exactly two triangles.
TriangleMesh extract_blocky_mesh(const VoxelGrid& grid, double iso);

}  // namespace umbra
