#pragma once

#include <umbra/trimesh.hpp>

namespace umbra {

struct MeshValidationReport {
  bool watertight = false;            // every edge on exactly two faces
  bool consistent_orientation = false;  // half-edge directions oppose
  int degenerate_faces = 0;           // zero area or repeated index
};

// Half-edge census over the face list.
MeshValidationReport validate_mesh(const TriangleMesh& mesh);

// Sum of signed tetrahedron volumes; positive for outward CCW winding of a
// closed surface.
double signed_volume(const TriangleMesh& mesh);

}  // namespace umbra
