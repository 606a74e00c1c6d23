#include <umbra/visual_hull.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace umbra {

std::size_t BinaryOccupancy::count() const {
  return std::accumulate(occupied.begin(), occupied.end(), std::size_t{0});
}

namespace {

// Nearest pixel under the +0.5-center convention: the pixel whose cell
// [i, i+1) x [j, j+1) contains the projection. Returns false if outside.
bool nearest_pixel(const Camera& camera, const Vec3& p, int* x, int* y) {
  const Vec2 px = camera.project(p);
  const int ix = static_cast<int>(std::floor(px.x));
  const int iy = static_cast<int>(std::floor(px.y));
  if (ix < 0 || iy < 0 || ix >= camera.width() || iy >= camera.height()) {
    return false;
  }
  *x = ix;
  *y = iy;
  return true;
}

}  // namespace

BinaryOccupancy carve_visual_hull(const std::vector<ShadowConfiguration>& views,
                                  int resolution, double extent) {
  if (views.empty()) {
    throw std::invalid_argument("carving needs at least one view");
  }
  if (resolution < 2 || !(extent > 0.0)) {
    throw std::invalid_argument("bad carving grid parameters");
  }

  BinaryOccupancy occ(resolution, extent);
  for (int z = 0; z < resolution; ++z) {
    for (int y = 0; y < resolution; ++y) {
      for (int x = 0; x < resolution; ++x) {
        const Vec3 c = occ.center(x, y, z);
        bool keep = true;
        for (const ShadowConfiguration& view : views) {
          int px;
          int py;
          if (!nearest_pixel(view.camera, c, &px, &py) ||
              view.target.image.at(px, py) < 0.5) {
            keep = false;
            break;
          }
        }
        occ.occupied[occ.index(x, y, z)] = keep ? 1 : 0;
      }
    }
  }
  return occ;
}

Image occupancy_silhouette(const BinaryOccupancy& occupancy,
                           const Camera& camera) {
  Image out(camera.width(), camera.height());
  const int d = occupancy.resolution;
  for (int z = 0; z < d; ++z) {
    for (int y = 0; y < d; ++y) {
      for (int x = 0; x < d; ++x) {
        if (!occupancy.occupied[occupancy.index(x, y, z)]) continue;
        int px;
        int py;
        if (nearest_pixel(camera, occupancy.center(x, y, z), &px, &py)) {
          out.at(px, py) = 1.0;
        }
      }
    }
  }
  return out;
}

VoxelGrid grid_from_occupancy(const BinaryOccupancy& occupancy,
                              double inside_logit, double outside_logit) {
  VoxelGrid grid(occupancy.resolution, occupancy.extent, outside_logit);
  for (std::size_t i = 0; i < occupancy.occupied.size(); ++i) {
    if (occupancy.occupied[i]) grid.logits[i] = inside_logit;
  }
  return grid;
}

}  // namespace umbra
