#include <umbra/grid_io.hpp>

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace umbra {

namespace {

constexpr char kMagic[8] = {'U', 'M', 'B', 'R', 'A', 'G', 'R', 'D'};
constexpr std::uint32_t kVersion = 1;

}  // namespace

void save_grid(const VoxelGrid& grid, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);

  out.write(kMagic, sizeof(kMagic));
  const std::uint32_t version = kVersion;
  const std::uint32_t resolution = static_cast<std::uint32_t>(grid.resolution);
  out.write(reinterpret_cast<const char*>(&version), sizeof(version));
  out.write(reinterpret_cast<const char*>(&resolution), sizeof(resolution));
  out.write(reinterpret_cast<const char*>(&grid.extent), sizeof(grid.extent));
  out.write(reinterpret_cast<const char*>(&grid.fixed_color),
            sizeof(grid.fixed_color));
  out.write(reinterpret_cast<const char*>(grid.logits.data()),
            static_cast<std::streamsize>(grid.logits.size() * sizeof(double)));
  if (!out.good()) throw std::runtime_error("write failed: " + path);
}

VoxelGrid load_grid(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);

  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in.good() || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw std::runtime_error("not an umbra grid file: " + path);
  }
  std::uint32_t version = 0;
  std::uint32_t resolution = 0;
  double extent = 0.0;
  double fixed_color = 1.0;
  in.read(reinterpret_cast<char*>(&version), sizeof(version));
  in.read(reinterpret_cast<char*>(&resolution), sizeof(resolution));
  in.read(reinterpret_cast<char*>(&extent), sizeof(extent));
  in.read(reinterpret_cast<char*>(&fixed_color), sizeof(fixed_color));
  if (!in.good() || version != kVersion) {
    throw std::runtime_error("unsupported grid file version: " + path);
  }

  VoxelGrid grid(static_cast<int>(resolution), extent, 0.0);
  grid.fixed_color = fixed_color;
  in.read(reinterpret_cast<char*>(grid.logits.data()),
          static_cast<std::streamsize>(grid.logits.size() * sizeof(double)));
  if (!in.good()) throw std::runtime_error("truncated grid file: " + path);
  return grid;
}

}  // namespace umbra
