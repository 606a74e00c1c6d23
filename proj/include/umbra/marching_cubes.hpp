#pragma once

#include <umbra/trimesh.hpp>
#include <umbra/voxel_grid.hpp>

namespace umbra {

// Marching-cubes surface of the density field at the given level, with
// outward orientation (normals point from density > iso toward < iso).
// The field is padded with one empty layer so surfaces touching the grid
// border still close. Returns an empty mesh when nothing crosses iso.
TriangleMesh extract_isosurface(const VoxelGrid& grid, double iso);

}  // namespace umbra
