#include <umbra/trimesh.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace umbra {

namespace {

TriangleMesh unit_icosahedron() {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  TriangleMesh m;
  m.vertices = {{-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0},
                {0, -1, t}, {0, 1, t},  {0, -1, -t}, {0, 1, -t},
                {t, 0, -1}, {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
  m.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
             {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
             {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
             {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  for (Vec3& v : m.vertices) v = normalized(v);
  return m;
}

}  // namespace

TriangleMesh icosphere(int level, double radius) {
  if (level < 0) throw std::invalid_argument("icosphere level must be >= 0");
  if (!(radius > 0.0)) {
    throw std::invalid_argument("icosphere radius must be positive");
  }

  TriangleMesh mesh = unit_icosahedron();
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<int, int>, int> midpoint;
    auto mid = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = midpoint.find(key);
      if (it != midpoint.end()) return it->second;
      const int idx = mesh.vertex_count();
      mesh.vertices.push_back(
          normalized(mesh.vertices[a] + mesh.vertices[b]));
      midpoint.emplace(key, idx);
      return idx;
    };

    std::vector<std::array<int, 3>> next;
    next.reserve(mesh.faces.size() * 4);
    for (const auto& f : mesh.faces) {
      const int a = mid(f[0], f[1]);
      const int b = mid(f[1], f[2]);
      const int c = mid(f[2], f[0]);
      next.push_back({f[0], a, c});
      next.push_back({f[1], b, a});
      next.push_back({f[2], c, b});
      next.push_back({a, b, c});
    }
    mesh.faces = std::move(next);
  }

  for (Vec3& v : mesh.vertices) v *= radius;
  return mesh;
}

TriangleMesh deform(const TriangleMesh& src, const DisplacementField& d) {
  if (d.offsets.size() != src.vertices.size()) {
    throw std::invalid_argument(
        "displacement field length does not match vertex count");
  }
  TriangleMesh out = src;
  for (std::size_t i = 0; i < out.vertices.size(); ++i) {
    out.vertices[i] += d.offsets[i];
  }
  return out;
}

MeshTopology MeshTopology::build(const TriangleMesh& mesh) {
  MeshTopology topo;
  topo.face_count = mesh.face_count();
  topo.neighbors.resize(mesh.vertices.size());

  std::map<std::pair<int, int>, int> edge_index;
  for (int f = 0; f < mesh.face_count(); ++f) {
    const auto& face = mesh.faces[f];
    for (int s = 0; s < 3; ++s) {
      const int a = face[s];
      const int b = face[(s + 1) % 3];
      const int opposite = face[(s + 2) % 3];
      const auto key = std::minmax(a, b);

      auto it = edge_index.find(key);
      if (it == edge_index.end()) {
        MeshEdge e;
        e.v0 = key.first;
        e.v1 = key.second;
        e.face0 = f;
        e.opposite0 = opposite;
        edge_index.emplace(key, static_cast<int>(topo.edges.size()));
        topo.edges.push_back(e);
        topo.neighbors[a].push_back(b);
        topo.neighbors[b].push_back(a);
      } else {
        MeshEdge& e = topo.edges[it->second];
        if (e.face1 >= 0) {
          throw std::invalid_argument(
              "non-manifold mesh: edge shared by more than two faces");
        }
        e.face1 = f;
        e.opposite1 = opposite;
      }
    }
  }
  for (auto& n : topo.neighbors) std::sort(n.begin(), n.end());
  return topo;
}

}  // namespace umbra
