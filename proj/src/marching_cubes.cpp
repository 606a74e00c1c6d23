#include <umbra/marching_cubes.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

namespace umbra {

namespace {

#include "mc_tables.inc"

constexpr int kCornerOffset[8][3] = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0},
                                     {0, 1, 0}, {0, 0, 1}, {1, 0, 1},
                                     {1, 1, 1}, {0, 1, 1}};

constexpr int kEdgeCorner[12][2] = {{0, 1}, {1, 2}, {2, 3}, {3, 0},
                                    {4, 5}, {5, 6}, {6, 7}, {7, 4},
                                    {0, 4}, {1, 5}, {2, 6}, {3, 7}};

}  // namespace

TriangleMesh extract_isosurface(const VoxelGrid& grid, double iso) {
  if (!(iso > 0.0 && iso < 1.0)) {
    throw std::invalid_argument("iso must be in (0, 1)");
  }

  const int d = grid.resolution;
  const int n = d + 2;  // lattice padded with one empty layer
  const double h = grid.spacing();
  const double half = grid.extent / 2.0;
  const std::vector<double> dens = densities(grid);

  auto value = [&](int x, int y, int z) -> double {
    const int gx = x - 1;
    const int gy = y - 1;
    const int gz = z - 1;
    if (gx < 0 || gy < 0 || gz < 0 || gx >= d || gy >= d || gz >= d) {
      return 0.0;
    }
    return dens[grid.index(gx, gy, gz)];
  };
  auto position = [&](int x, int y, int z) -> Vec3 {
    return {-half + (x - 0.5) * h, -half + (y - 0.5) * h,
            -half + (z - 0.5) * h};
  };
  auto point_id = [&](int x, int y, int z) -> std::int64_t {
    return (static_cast<std::int64_t>(z) * n + y) * n + x;
  };

  TriangleMesh mesh;
  std::unordered_map<std::int64_t, int> edge_vertex;
  const std::int64_t npoints = static_cast<std::int64_t>(n) * n * n;

  // Welded vertex on the lattice edge (pa, pb); interpolation always runs
  // from the lower point id so shared edges produce bit-identical vertices.
  auto vertex_on_edge = [&](int ax, int ay, int az, int bx, int by,
                            int bz) -> int {
    std::int64_t pa = point_id(ax, ay, az);
    std::int64_t pb = point_id(bx, by, bz);
    if (pa > pb) {
      std::swap(pa, pb);
      std::swap(ax, bx);
      std::swap(ay, by);
      std::swap(az, bz);
    }
    const std::int64_t key = pa * npoints + pb;
    auto it = edge_vertex.find(key);
    if (it != edge_vertex.end()) return it->second;

    const double va = value(ax, ay, az);
    const double vb = value(bx, by, bz);
    const double mu =
        std::abs(vb - va) < 1e-300 ? 0.5 : (iso - va) / (vb - va);
    const Vec3 a = position(ax, ay, az);
    const Vec3 b = position(bx, by, bz);
    const int idx = mesh.vertex_count();
    mesh.vertices.push_back(a + (b - a) * mu);
    edge_vertex.emplace(key, idx);
    return idx;
  };

  for (int z = 0; z < n - 1; ++z) {
    for (int y = 0; y < n - 1; ++y) {
      for (int x = 0; x < n - 1; ++x) {
        int cube = 0;
        double corner_val[8];
        for (int c = 0; c < 8; ++c) {
          corner_val[c] = value(x + kCornerOffset[c][0],
                                y + kCornerOffset[c][1],
                                z + kCornerOffset[c][2]);
          if (corner_val[c] < iso) cube |= 1 << c;
        }
        if (kEdgeTable[cube] == 0) continue;

        int edge_verts[12];
        for (int e = 0; e < 12; ++e) {
          if (!(kEdgeTable[cube] & (1 << e))) continue;
          const int* ca = kCornerOffset[kEdgeCorner[e][0]];
          const int* cb = kCornerOffset[kEdgeCorner[e][1]];
          edge_verts[e] =
              vertex_on_edge(x + ca[0], y + ca[1], z + ca[2], x + cb[0],
                             y + cb[1], z + cb[2]);
        }

        for (int i = 0; kTriTable[cube][i] != -1; i += 3) {
          const int v0 = edge_verts[kTriTable[cube][i]];
          const int v1 = edge_verts[kTriTable[cube][i + 1]];
          const int v2 = edge_verts[kTriTable[cube][i + 2]];
          if (v0 == v1 || v1 == v2 || v2 == v0) continue;  // exact-iso sliver
          mesh.faces.push_back({v0, v1, v2});
        }
      }
    }
  }

  if (mesh.faces.empty()) return {};
  return mesh;
}

}  // namespace umbra
