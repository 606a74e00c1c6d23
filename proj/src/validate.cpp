#include <umbra/validate.hpp>

#include <cstdint>
#include <unordered_map>

namespace umbra {

MeshValidationReport validate_mesh(const TriangleMesh& mesh) {
  MeshValidationReport report;
  if (mesh.empty()) return report;

  // key: directed edge (a, b) packed into 64 bits
  std::unordered_map<std::uint64_t, int> directed;
  std::unordered_map<std::uint64_t, int> undirected;
  auto pack = [](int a, int b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
  };

  for (const auto& f : mesh.faces) {
    if (f[0] == f[1] || f[1] == f[2] || f[2] == f[0]) {
      ++report.degenerate_faces;
    } else {
      const Vec3 n = cross(mesh.vertices[f[1]] - mesh.vertices[f[0]],
                           mesh.vertices[f[2]] - mesh.vertices[f[0]]);
      if (norm_squared(n) == 0.0) ++report.degenerate_faces;
    }
    for (int s = 0; s < 3; ++s) {
      const int a = f[s];
      const int b = f[(s + 1) % 3];
      ++directed[pack(a, b)];
      ++undirected[pack(std::min(a, b), std::max(a, b))];
    }
  }

  report.watertight = true;
  for (const auto& [key, count] : undirected) {
    if (count != 2) {
      report.watertight = false;
      break;
    }
  }

  report.consistent_orientation = true;
  for (const auto& [key, count] : directed) {
    if (count > 1) {
      report.consistent_orientation = false;
      break;
    }
  }
  return report;
}

double signed_volume(const TriangleMesh& mesh) {
  double vol = 0.0;
  for (const auto& f : mesh.faces) {
    const Vec3& a = mesh.vertices[f[0]];
    const Vec3& b = mesh.vertices[f[1]];
    const Vec3& c = mesh.vertices[f[2]];
    vol += dot(a, cross(b, c));
  }
  return vol / 6.0;
}

}  // namespace umbra
