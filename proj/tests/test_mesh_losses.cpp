#include <umbra/gradient_check.hpp>
#include <umbra/mesh_losses.hpp>

#include <doctest.h>

#include <cmath>
#include <random>

using namespace umbra;

namespace {

// Two triangles sharing the edge (0,1) with consistent winding; vertex 3
// sits at `b`.
TriangleMesh edge_pair(const Vec3& b) {
  TriangleMesh m;
  m.vertices = {{0, 0, 0}, {1, 0, 0}, {0.5, -1, 0}, b};
  m.faces = {{0, 1, 2}, {1, 0, 3}};
  return m;
}

// Brute-force Eq-style oracle: scan all face pairs for a shared edge and
// accumulate 1 - cos of the two normals built from that edge.
double normal_consistency_bruteforce(const TriangleMesh& m) {
  double total = 0.0;
  for (int f1 = 0; f1 < m.face_count(); ++f1) {
    for (int f2 = f1 + 1; f2 < m.face_count(); ++f2) {
      int shared[2];
      int count = 0;
      for (int i : m.faces[f1]) {
        for (int j : m.faces[f2]) {
          if (i == j && count < 2) shared[count++] = i;
        }
      }
      if (count != 2) continue;
      auto third = [&](int face) {
        for (int i : m.faces[face]) {
          if (i != shared[0] && i != shared[1]) return i;
        }
        return -1;
      };
      const Vec3& vx = m.vertices[shared[0]];
      const Vec3& vy = m.vertices[shared[1]];
      const Vec3& a = m.vertices[third(f1)];
      const Vec3& b = m.vertices[third(f2)];
      const Vec3 nx = cross(vy - vx, a - vx);
      const Vec3 ny = cross(b - vx, vy - vx);
      total += 1.0 - dot(nx, ny) / (norm(nx) * norm(ny));
    }
  }
  return total / m.face_count();
}

std::vector<double> flatten(const std::vector<Vec3>& vecs) {
  std::vector<double> out;
  for (const Vec3& v : vecs) {
    out.push_back(v.x);
    out.push_back(v.y);
    out.push_back(v.z);
  }
  return out;
}

TriangleMesh from_flat(const TriangleMesh& proto,
                       std::span<const double> flat) {
  TriangleMesh m = proto;
  for (std::size_t i = 0; i < m.vertices.size(); ++i) {
    m.vertices[i] = {flat[3 * i], flat[3 * i + 1], flat[3 * i + 2]};
  }
  return m;
}

void check_loss_gradient(const TriangleMesh& mesh,
                         LossResult (*loss)(const TriangleMesh&,
                                            const MeshTopology&),
                         double tolerance, bool skip_kinks) {
  const MeshTopology topo = MeshTopology::build(mesh);
  const LossResult res = loss(mesh, topo);

  auto f = [&](std::span<const double> flat) {
    return loss(from_flat(mesh, flat), topo).value;
  };
  GradientCheckOptions opts;
  opts.epsilon = 1e-6;
  opts.tolerance = tolerance;
  opts.max_coords = 96;
  opts.skip_kinks = skip_kinks;
  const std::vector<double> params = flatten(mesh.vertices);
  const GradientCheckReport report =
      gradient_check(f, params, flatten(res.gradients), opts);
  CHECK(report.checked >= 64);
  CHECK(report.max_rel_error <= tolerance);
}

}  // namespace

TEST_CASE("normal_consistency_loss: coplanar pair is zero") {
  const TriangleMesh m = edge_pair({0.5, 1, 0});
  const LossResult res =
      normal_consistency_loss(m, MeshTopology::build(m));
  CHECK(res.value == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(normal_consistency_metric(m, MeshTopology::build(m)) ==
        doctest::Approx(1.0));
}

TEST_CASE("normal_consistency_loss: 90-degree fold") {
  const TriangleMesh m = edge_pair({0.5, 0, 1});
  const MeshTopology topo = MeshTopology::build(m);
  // per-edge term 1 - cos(90) = 1, normalized by |F| = 2
  CHECK(normal_consistency_loss(m, topo).value == doctest::Approx(0.5));
  CHECK(normal_consistency_metric(m, topo) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("normal_consistency_loss: icosphere value matches brute force") {
  const TriangleMesh m = icosphere(1, 1.0);
  const LossResult res =
      normal_consistency_loss(m, MeshTopology::build(m));
  CHECK(res.value ==
        doctest::Approx(normal_consistency_bruteforce(m)).epsilon(1e-12));
}

TEST_CASE("normal_consistency_loss: gradient matches finite differences") {
  TriangleMesh m = icosphere(1, 1.0);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> uni(-0.05, 0.05);
  for (Vec3& v : m.vertices) v += {uni(rng), uni(rng), uni(rng)};
  check_loss_gradient(m, &normal_consistency_loss, 1e-4, false);
}

TEST_CASE("normal_consistency_metric: finer icospheres are smoother") {
  const TriangleMesh a = icosphere(1, 1.0);
  const TriangleMesh b = icosphere(3, 1.0);
  const double ma = normal_consistency_metric(a, MeshTopology::build(a));
  const double mb = normal_consistency_metric(b, MeshTopology::build(b));
  CHECK(mb > ma);
  CHECK(ma > 0.0);
  CHECK(mb < 1.0);
}

TEST_CASE("laplacian_loss: regular tetrahedron oracle") {
  TriangleMesh m;
  m.vertices = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  m.faces = {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}};
  const MeshTopology topo = MeshTopology::build(m);
  // neighbor centroid of each vertex is -v/3, so the Laplacian vector is
  // -4v/3 with L1 norm 4 at every vertex
  CHECK(laplacian_loss(m, topo).value == doctest::Approx(4.0));
}

TEST_CASE("laplacian_loss: centroid vertex contributes zero") {
  TriangleMesh m;
  m.vertices.push_back({0, 0, 0});
  for (int k = 0; k < 6; ++k) {
    const double a = k * 3.14159265358979323846 / 3.0;
    m.vertices.push_back({std::cos(a), std::sin(a), 0.0});
  }
  for (int k = 0; k < 6; ++k) {
    m.faces.push_back({0, 1 + k, 1 + (k + 1) % 6});
  }
  const MeshTopology topo = MeshTopology::build(m);
  const std::vector<Vec3> lap = uniform_laplacians(m, topo);
  CHECK(norm(lap[0]) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("laplacian_loss: gradient matches finite differences off kinks") {
  TriangleMesh m = icosphere(1, 1.0);
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> uni(-0.03, 0.03);
  for (Vec3& v : m.vertices) v += {uni(rng), uni(rng), uni(rng)};
  check_loss_gradient(m, &laplacian_loss, 1e-4, true);
}

TEST_CASE("laplacian_loss: isolated vertex is an error") {
  TriangleMesh m;
  m.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {5, 5, 5}};
  m.faces = {{0, 1, 2}};
  CHECK_THROWS(laplacian_loss(m, MeshTopology::build(m)));
}

TEST_CASE("edge_length_loss: coincident vertices and the unit edge") {
  TriangleMesh collapsed = icosphere(0, 1.0);
  for (Vec3& v : collapsed.vertices) v = {0.3, -0.2, 0.9};
  const MeshTopology topo = MeshTopology::build(collapsed);
  CHECK(edge_length_loss(collapsed, topo).value == 0.0);

  // a single unit edge, counted once from each endpoint
  TriangleMesh segment;
  segment.vertices = {{0, 0, 0}, {1, 0, 0}};
  MeshTopology single;
  single.face_count = 0;
  single.neighbors = {{1}, {0}};
  MeshEdge e;
  e.v0 = 0;
  e.v1 = 1;
  single.edges = {e};
  CHECK(edge_length_loss(segment, single).value == doctest::Approx(2.0));
}

TEST_CASE("edge_length_loss: icosahedron closed form") {
  const TriangleMesh m = icosphere(0, 1.0);
  const MeshTopology topo = MeshTopology::build(m);
  const double edge = 4.0 / std::sqrt(10.0 + 2.0 * std::sqrt(5.0));
  CHECK(edge_length_loss(m, topo).value ==
        doctest::Approx(2.0 * 30.0 * edge * edge).epsilon(1e-9));
}

TEST_CASE("edge_length_loss: gradient matches finite differences") {
  TriangleMesh m = icosphere(1, 1.0);
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> uni(-0.05, 0.05);
  for (Vec3& v : m.vertices) v += {uni(rng), uni(rng), uni(rng)};
  check_loss_gradient(m, &edge_length_loss, 1e-6, false);
}
