#pragma once

#include <umbra/trimesh.hpp>

#include <vector>

namespace umbra {

struct LossResult {
  double value = 0.0;
  std::vector<Vec3> gradients;  // per vertex
};

// (1/|F|) sum over interior edges of (1 - cos(n_x, n_y)) where n_x, n_y are
// the incident face normals built from the shared edge; 0 for coplanar
// consistently wound neighbors.
LossResult normal_consistency_loss(const TriangleMesh& mesh,
                                   const MeshTopology& topo);

// (1/|V|) sum of the L1 norms of the uniform Laplacian vectors
// (neighbor centroid minus vertex). Subgradient 0 at exact coordinate zeros.
LossResult laplacian_loss(const TriangleMesh& mesh, const MeshTopology& topo);

// sum_i sum_{j in N(i)} ||v_i - v_j||^2, i.e. each undirected edge twice.
LossResult edge_length_loss(const TriangleMesh& mesh,
                            const MeshTopology& topo);

// Mean cosine between adjacent face normals, in [-1, 1]; the no-reference
// smoothness score.
double normal_consistency_metric(const TriangleMesh& mesh,
                                 const MeshTopology& topo);

// Per-vertex uniform Laplacian vectors (neighbor centroid minus vertex).
std::vector<Vec3> uniform_laplacians(const TriangleMesh& mesh,
                                     const MeshTopology& topo);

}  // namespace umbra
