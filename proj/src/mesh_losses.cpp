#include <umbra/mesh_losses.hpp>

#include <cmath>
#include <stdexcept>

namespace umbra {

namespace {

// Normals of the two faces incident to an interior edge, written in terms of
// the shared edge (vx, vy) and the opposite vertices a and b:
//   n_x = (vy - vx) x (a - vx), n_y = (b - vx) x (vy - vx).
// Both point the same way when the faces are consistently wound.
struct EdgePair {
  Vec3 nx, ny;
  Vec3 u, w, pp, q;  // nx = u x w, ny = pp x q
};

EdgePair edge_normals(const TriangleMesh& mesh, const MeshEdge& e) {
  const Vec3& vx = mesh.vertices[e.v0];
  const Vec3& vy = mesh.vertices[e.v1];
  const Vec3& a = mesh.vertices[e.opposite0];
  const Vec3& b = mesh.vertices[e.opposite1];
  EdgePair p;
  p.u = vy - vx;
  p.w = a - vx;
  p.pp = b - vx;
  p.q = vy - vx;
  p.nx = cross(p.u, p.w);
  p.ny = cross(p.pp, p.q);
  return p;
}

}  // namespace

LossResult normal_consistency_loss(const TriangleMesh& mesh,
                                   const MeshTopology& topo) {
  LossResult res;
  res.gradients.assign(mesh.vertices.size(), Vec3{});
  if (topo.face_count == 0) return res;

  const double inv_f = 1.0 / topo.face_count;
  for (const MeshEdge& e : topo.edges) {
    if (!e.interior()) continue;
    const EdgePair pair = edge_normals(mesh, e);
    const double lx = norm(pair.nx);
    const double ly = norm(pair.ny);
    if (lx < 1e-300 || ly < 1e-300) continue;  // degenerate face

    const double c = dot(pair.nx, pair.ny) / (lx * ly);
    res.value += (1.0 - c) * inv_f;

    // dL/dn_x = -(1/|F|) (n_y/(lx ly) - c n_x/lx^2), likewise for n_y.
    const Vec3 g = (pair.nx * (c / (lx * lx)) - pair.ny / (lx * ly)) * inv_f;
    const Vec3 h = (pair.ny * (c / (ly * ly)) - pair.nx / (lx * ly)) * inv_f;

    // n = u x w: dL/du = w x g, dL/dw = g x u.
    const Vec3 du = cross(pair.w, g);
    const Vec3 dw = cross(g, pair.u);
    const Vec3 dpp = cross(pair.q, h);
    const Vec3 dq = cross(h, pair.pp);

    res.gradients[e.v1] += du + dq;
    res.gradients[e.opposite0] += dw;
    res.gradients[e.opposite1] += dpp;
    res.gradients[e.v0] -= du + dw + dpp + dq;
  }
  return res;
}

std::vector<Vec3> uniform_laplacians(const TriangleMesh& mesh,
                                     const MeshTopology& topo) {
  std::vector<Vec3> lap(mesh.vertices.size());
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    const auto& nbrs = topo.neighbors[i];
    if (nbrs.empty()) {
      throw std::invalid_argument("mesh has an isolated vertex");
    }
    Vec3 centroid{};
    for (int j : nbrs) centroid += mesh.vertices[j];
    lap[i] = centroid / static_cast<double>(nbrs.size()) - mesh.vertices[i];
  }
  return lap;
}

LossResult laplacian_loss(const TriangleMesh& mesh, const MeshTopology& topo) {
  LossResult res;
  res.gradients.assign(mesh.vertices.size(), Vec3{});
  if (mesh.vertices.empty()) return res;

  const std::vector<Vec3> lap = uniform_laplacians(mesh, topo);
  const double inv_v = 1.0 / static_cast<double>(mesh.vertices.size());

  auto sgn = [](double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); };
  for (std::size_t i = 0; i < lap.size(); ++i) {
    res.value += norm_l1(lap[i]) * inv_v;
    const Vec3 s{sgn(lap[i].x), sgn(lap[i].y), sgn(lap[i].z)};
    res.gradients[i] -= s * inv_v;
    const double w = inv_v / static_cast<double>(topo.neighbors[i].size());
    for (int j : topo.neighbors[i]) res.gradients[j] += s * w;
  }
  return res;
}

LossResult edge_length_loss(const TriangleMesh& mesh,
                            const MeshTopology& topo) {
  LossResult res;
  res.gradients.assign(mesh.vertices.size(), Vec3{});
  for (const MeshEdge& e : topo.edges) {
    const Vec3 d = mesh.vertices[e.v0] - mesh.vertices[e.v1];
    res.value += 2.0 * norm_squared(d);
    res.gradients[e.v0] += d * 4.0;
    res.gradients[e.v1] -= d * 4.0;
  }
  return res;
}

double normal_consistency_metric(const TriangleMesh& mesh,
                                 const MeshTopology& topo) {
  double total = 0.0;
  std::size_t count = 0;
  for (const MeshEdge& e : topo.edges) {
    if (!e.interior()) continue;
    const EdgePair pair = edge_normals(mesh, e);
    const double lx = norm(pair.nx);
    const double ly = norm(pair.ny);
    if (lx < 1e-300 || ly < 1e-300) continue;
    total += dot(pair.nx, pair.ny) / (lx * ly);
    ++count;
  }
  if (count == 0) {
    throw std::invalid_argument("mesh has no interior edges");
  }
  return total / static_cast<double>(count);
}

}  // namespace umbra
