#include <umbra/obj_io.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace umbra {

void write_obj(const TriangleMesh& mesh, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);

  char line[128];
  for (const Vec3& v : mesh.vertices) {
    std::snprintf(line, sizeof(line), "v %.6g %.6g %.6g\n", v.x, v.y, v.z);
    out << line;
  }
  for (const auto& f : mesh.faces) {
    out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
  }
  if (!out.good()) throw std::runtime_error("write failed: " + path);
}

TriangleMesh read_obj(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);

  TriangleMesh mesh;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (tag == "v") {
      Vec3 v;
      if (!(ss >> v.x >> v.y >> v.z)) {
        throw std::runtime_error("malformed vertex line in " + path);
      }
      mesh.vertices.push_back(v);
    } else if (tag == "f") {
      std::array<int, 3> f;
      for (int i = 0; i < 3; ++i) {
        std::string tok;
        if (!(ss >> tok)) {
          throw std::runtime_error("malformed face line in " + path);
        }
        // accept "i", "i/t", "i/t/n"
        f[i] = std::stoi(tok) - 1;
        if (f[i] < 0) throw std::runtime_error("bad face index in " + path);
      }
      mesh.faces.push_back(f);
    }
  }
  for (const auto& f : mesh.faces) {
    for (int i : f) {
      if (i >= mesh.vertex_count()) {
        throw std::runtime_error("face index out of range in " + path);
      }
    }
  }
  return mesh;
}

}  // namespace umbra
