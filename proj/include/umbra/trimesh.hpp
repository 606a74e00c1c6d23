#pragma once

#include <umbra/vec3.hpp>

#include <array>
#include <vector>

namespace umbra {

// Triangle mesh with counter-clockwise (outward) face winding.
struct TriangleMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<int, 3>> faces;

  bool empty() const { return faces.empty(); }
  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int face_count() const { return static_cast<int>(faces.size()); }
};

// Learnable per-vertex offsets.
struct DisplacementField {
  std::vector<Vec3> offsets;

  static DisplacementField zeros(std::size_t vertex_count) {
    DisplacementField d;
    d.offsets.assign(vertex_count, Vec3{});
    return d;
  }
};

// Midpoint-subdivided icosahedron re-projected to the sphere.
// |V| = 10*4^level + 2, |F| = 20*4^level.
TriangleMesh icosphere(int level, double radius);

// vertices + offsets, faces unchanged. Throws on length mismatch.
TriangleMesh deform(const TriangleMesh& src, const DisplacementField& d);

struct MeshEdge {
  int v0 = -1;  // v0 < v1
  int v1 = -1;
  int face0 = -1;
  int face1 = -1;      // -1 for boundary edges
  int opposite0 = -1;  // third vertex of face0
  int opposite1 = -1;

  bool interior() const { return face1 >= 0; }
};

// Undirected edge and vertex-neighborhood structure. Depends only on the
// face list, so it can be built once and reused while vertices move.
struct MeshTopology {
  std::vector<MeshEdge> edges;
  std::vector<std::vector<int>> neighbors;  // per-vertex adjacent vertices
  int face_count = 0;

  static MeshTopology build(const TriangleMesh& mesh);
};

}  // namespace umbra
