#include <umbra/blocky.hpp>

#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace umbra {

namespace {

// Quad corner offsets per face direction, wound counter-clockwise seen from
// outside the voxel. Directions: -x, +x, -y, +y, -z, +z.
constexpr int kFaceCorners[6][4][3] = {
    {{0, 0, 0}, {0, 0, 1}, {0, 1, 1}, {0, 1, 0}},  // -x
    {{1, 0, 0}, {1, 1, 0}, {1, 1, 1}, {1, 0, 1}},  // +x
    {{0, 0, 0}, {1, 0, 0}, {1, 0, 1}, {0, 0, 1}},  // -y
    {{0, 1, 0}, {0, 1, 1}, {1, 1, 1}, {1, 1, 0}},  // +y
    {{0, 0, 0}, {0, 1, 0}, {1, 1, 0}, {1, 0, 0}},  // -z
    {{0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}},  // +z
};

constexpr int kDirStep[6][3] = {{-1, 0, 0}, {1, 0, 0},  {0, -1, 0},
                                {0, 1, 0},  {0, 0, -1}, {0, 0, 1}};

struct Quad {
  std::int64_t corner[4];  // corner-lattice ids, CCW from outside
  std::int64_t voxel;
};

struct UnionFind {
  std::vector<int> parent;

  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

TriangleMesh extract_blocky_mesh(const VoxelGrid& grid, double iso) {
  if (!(iso > 0.0 && iso < 1.0)) {
    throw std::invalid_argument("iso must be in (0, 1)");
  }

  const int d = grid.resolution;
  const std::vector<double> dens = densities(grid);
  auto occupied = [&](int x, int y, int z) {
    if (x < 0 || y < 0 || z < 0 || x >= d || y >= d || z >= d) return false;
    return dens[grid.index(x, y, z)] > iso;
  };

  const std::int64_t cd = d + 1;  // corner lattice side
  auto corner_id = [&](int x, int y, int z) -> std::int64_t {
    return (static_cast<std::int64_t>(z) * cd + y) * cd + x;
  };

  std::vector<Quad> quads;
  for (int z = 0; z < d; ++z) {
    for (int y = 0; y < d; ++y) {
      for (int x = 0; x < d; ++x) {
        if (!occupied(x, y, z)) continue;
        for (int dir = 0; dir < 6; ++dir) {
          if (occupied(x + kDirStep[dir][0], y + kDirStep[dir][1],
                       z + kDirStep[dir][2])) {
            continue;
          }
          Quad q;
          q.voxel = grid.index(x, y, z);
          for (int c = 0; c < 4; ++c) {
            q.corner[c] = corner_id(x + kFaceCorners[dir][c][0],
                                    y + kFaceCorners[dir][c][1],
                                    z + kFaceCorners[dir][c][2]);
          }
          quads.push_back(q);
        }
      }
    }
  }
  if (quads.empty()) return {};

  // Half-edge pairing keyed by the undirected lattice edge. Two incident
  // quads pair directly. Four incident quads happen when two above-iso
  // voxels touch only along this edge; pairing the two quads of the same
  // voxel keeps each solid wedge a separate manifold sheet instead of
  // fusing them into a non-manifold edge.
  struct HalfEdge {
    int quad;
    int slot;  // edge corner[slot] -> corner[(slot+1)%4]
  };
  std::unordered_map<std::uint64_t, std::vector<HalfEdge>> edge_map;
  const std::uint64_t npoints =
      static_cast<std::uint64_t>(cd) * cd * cd;
  for (int q = 0; q < static_cast<int>(quads.size()); ++q) {
    for (int s = 0; s < 4; ++s) {
      std::int64_t a = quads[q].corner[s];
      std::int64_t b = quads[q].corner[(s + 1) % 4];
      if (a > b) std::swap(a, b);
      edge_map[static_cast<std::uint64_t>(a) * npoints + b].push_back({q, s});
    }
  }

  // One weldable slot per quad corner.
  UnionFind uf(quads.size() * 4);
  auto slot_id = [](int quad, int slot) { return quad * 4 + slot; };

  auto pair_halves = [&](const HalfEdge& h1, const HalfEdge& h2) {
    const Quad& q1 = quads[h1.quad];
    const Quad& q2 = quads[h2.quad];
    const std::int64_t a1 = q1.corner[h1.slot];
    const std::int64_t b1 = q1.corner[(h1.slot + 1) % 4];
    const std::int64_t a2 = q2.corner[h2.slot];
    // Boundary-of-solid quads traverse a shared edge in opposite directions.
    if (a2 != b1 || q2.corner[(h2.slot + 1) % 4] != a1) {
      throw std::logic_error("blocky mesh: inconsistent half-edge pairing");
    }
    uf.unite(slot_id(h1.quad, h1.slot), slot_id(h2.quad, (h2.slot + 1) % 4));
    uf.unite(slot_id(h1.quad, (h1.slot + 1) % 4), slot_id(h2.quad, h2.slot));
  };

  for (auto& [key, halves] : edge_map) {
    if (halves.size() == 2) {
      pair_halves(halves[0], halves[1]);
    } else if (halves.size() == 4) {
      for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i + 1; j < 4; ++j) {
          if (quads[halves[i].quad].voxel == quads[halves[j].quad].voxel) {
            pair_halves(halves[i], halves[j]);
          }
        }
      }
    } else {
      throw std::logic_error("blocky mesh: bad lattice edge valence");
    }
  }

  TriangleMesh mesh;
  const double h = grid.spacing();
  const double half = grid.extent / 2.0;
  std::unordered_map<int, int> root_to_vertex;
  auto vertex_of = [&](int quad, int slot) {
    const int root = uf.find(slot_id(quad, slot));
    auto it = root_to_vertex.find(root);
    if (it != root_to_vertex.end()) return it->second;
    const std::int64_t cid = quads[quad].corner[slot];
    const int cx = static_cast<int>(cid % cd);
    const int cy = static_cast<int>((cid / cd) % cd);
    const int cz = static_cast<int>(cid / (cd * cd));
    const int idx = mesh.vertex_count();
    mesh.vertices.push_back(
        {-half + cx * h, -half + cy * h, -half + cz * h});
    root_to_vertex.emplace(root, idx);
    return idx;
  };

  for (int q = 0; q < static_cast<int>(quads.size()); ++q) {
    const int v0 = vertex_of(q, 0);
    const int v1 = vertex_of(q, 1);
    const int v2 = vertex_of(q, 2);
    const int v3 = vertex_of(q, 3);
    mesh.faces.push_back({v0, v1, v2});
    mesh.faces.push_back({v0, v2, v3});
  }
  return mesh;
}

}  // namespace umbra
