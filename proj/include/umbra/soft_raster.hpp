#pragma once

#include <umbra/camera.hpp>
#include <umbra/image.hpp>
#include <umbra/trimesh.hpp>

#include <vector>

namespace umbra {

// Screen space is pixel coordinates divided by the image height, so
// distances are isotropic and a full image column spans one unit.
struct SoftRasterSettings {
  double sharpness = 1e-4;        // sigma_s, squared screen units
  double distance_cutoff = 0.05;  // screen units; farther faces contribute 0
  int threads = 1;
};

// Occlusion-free soft silhouette: per-face coverage
// D_j(p) = logistic(sign * d^2(p, j) / sigma_s) with d the screen-space
// distance from the pixel to the projected triangle's boundary (sign +1
// inside, -1 outside), aggregated as pixel = 1 - prod_j (1 - D_j) over
// faces within distance_cutoff.
Image soft_silhouette(const TriangleMesh& mesh, const Camera& camera,
                      const SoftRasterSettings& settings);

// Adjoint: d(sum upstream * pixel)/d(vertex). At closest-feature ties the
// lowest feature index wins (vertices 0-2, then edges 01, 12, 20).
std::vector<Vec3> soft_silhouette_backward(const TriangleMesh& mesh,
                                           const Camera& camera,
                                           const SoftRasterSettings& settings,
                                           const Image& upstream);

}  // namespace umbra
