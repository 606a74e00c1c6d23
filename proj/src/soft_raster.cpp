#include <umbra/soft_raster.hpp>

#include <umbra/parallel.hpp>
#include <umbra/voxel_grid.hpp>  // sigmoid

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace umbra {

namespace {

inline double cross2(const Vec2& a, const Vec2& b) {
  return a.x * b.y - a.y * b.x;
}
inline Vec2 sub(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
inline double dot2(const Vec2& a, const Vec2& b) {
  return a.x * b.x + a.y * b.y;
}

// Closest feature of a 2D triangle. Features are ordered vertex 0..2 then
// edge (0,1), (1,2), (2,0); distance ties pick the lowest index.
struct TriDist {
  double boundary_d2 = 0.0;  // squared distance to the triangle boundary
  bool inside = false;
  int feature = -1;  // 0..2 vertex, 3..5 edge
  double t = 0.0;    // edge parameter when feature is an edge
};

TriDist point_triangle_dist2(const Vec2& p, const Vec2 v[3]) {
  TriDist best;
  best.boundary_d2 = std::numeric_limits<double>::infinity();

  // Candidate distances to the three corners and three open edge interiors.
  double cand_d2[6];
  double cand_t[6];
  for (int i = 0; i < 3; ++i) {
    const Vec2 d = sub(p, v[i]);
    cand_d2[i] = dot2(d, d);
    cand_t[i] = 0.0;
  }
  for (int e = 0; e < 3; ++e) {
    const Vec2& a = v[e];
    const Vec2& b = v[(e + 1) % 3];
    const Vec2 u = sub(b, a);
    const double len2 = dot2(u, u);
    double t = len2 > 0.0 ? dot2(sub(p, a), u) / len2 : 0.0;
    if (t <= 0.0 || t >= 1.0) {
      // Closest point is an endpoint; covered by the vertex candidates.
      cand_d2[3 + e] = std::numeric_limits<double>::infinity();
      cand_t[3 + e] = 0.0;
      continue;
    }
    const Vec2 q = sub(sub(p, a), {u.x * t, u.y * t});
    cand_d2[3 + e] = dot2(q, q);
    cand_t[3 + e] = t;
  }
  for (int f = 0; f < 6; ++f) {
    if (cand_d2[f] < best.boundary_d2) {
      best.boundary_d2 = cand_d2[f];
      best.feature = f;
      best.t = cand_t[f];
    }
  }

  const double area2 = cross2(sub(v[1], v[0]), sub(v[2], v[0]));
  if (area2 != 0.0) {
    const double s = area2 > 0.0 ? 1.0 : -1.0;
    best.inside = s * cross2(sub(v[1], v[0]), sub(p, v[0])) >= 0.0 &&
                  s * cross2(sub(v[2], v[1]), sub(p, v[1])) >= 0.0 &&
                  s * cross2(sub(v[0], v[2]), sub(p, v[2])) >= 0.0;
  }
  return best;
}

struct Screen {
  std::vector<Vec2> pos;       // projected vertices / image height
  std::vector<Vec3> cam;       // camera-frame coordinates (for Jacobians)
  bool perspective = false;
};

Screen project_vertices(const TriangleMesh& mesh, const Camera& camera) {
  Screen s;
  s.perspective = camera.projection() == Projection::kPerspective;
  s.pos.resize(mesh.vertices.size());
  s.cam.resize(mesh.vertices.size());
  const double inv_h = 1.0 / camera.height();
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    const Vec3& v = mesh.vertices[i];
    s.cam[i] = camera.rotation() * v + camera.translation();
    const Vec2 px = camera.project(v);
    s.pos[i] = {px.x * inv_h, px.y * inv_h};
  }
  return s;
}

// dl/d(screen endpoint) -> dl/d(world vertex) through the projection.
struct Projector {
  const Camera* camera;
  const Screen* screen;

  Vec3 world_grad(int vertex, const Vec2& g) const {
    const Camera& cam = *camera;
    if (!screen->perspective) {
      const double k = 1.0 / (2.0 * cam.fov_or_extent());
      return cam.right() * (g.x * k) + cam.down() * (g.y * k);
    }
    const double tan_half = std::tan(cam.fov_or_extent() * 0.5);
    const Vec3& c = screen->cam[vertex];
    const double k = 1.0 / (2.0 * tan_half);
    const Vec3 dx =
        (cam.right() * (1.0 / c.z) - cam.forward() * (c.x / (c.z * c.z))) * k;
    const Vec3 dy =
        (cam.down() * (1.0 / c.z) - cam.forward() * (c.y / (c.z * c.z))) * k;
    return dx * g.x + dy * g.y;
  }
};

struct Bins {
  int nx = 0;
  int ny = 0;
  double cell = 0.0;
  std::vector<std::vector<int>> faces;

  const std::vector<int>& at(double sx, double sy) const {
    int bx = std::clamp(static_cast<int>(sx / cell), 0, nx - 1);
    int by = std::clamp(static_cast<int>(sy / cell), 0, ny - 1);
    return faces[static_cast<std::size_t>(by) * nx + bx];
  }
};

// Uniform screen-space binning; a face lands in every bin its AABB expanded
// by the cutoff overlaps, so a pixel only scans its own bin.
Bins build_bins(const TriangleMesh& mesh, const Screen& screen,
                const Camera& camera, double cutoff) {
  Bins bins;
  const double sw = camera.aspect();  // screen width in units of height
  bins.cell = std::max(cutoff, 1.0 / camera.height());
  bins.nx = std::max(1, static_cast<int>(std::ceil(sw / bins.cell)));
  bins.ny = std::max(1, static_cast<int>(std::ceil(1.0 / bins.cell)));
  bins.faces.resize(static_cast<std::size_t>(bins.nx) * bins.ny);

  for (int f = 0; f < mesh.face_count(); ++f) {
    const auto& face = mesh.faces[f];
    if (screen.perspective) {
      // Behind-camera geometry is outside the silhouette model.
      if (screen.cam[face[0]].z <= 1e-9 || screen.cam[face[1]].z <= 1e-9 ||
          screen.cam[face[2]].z <= 1e-9) {
        continue;
      }
    }
    double lo_x = 1e300, lo_y = 1e300, hi_x = -1e300, hi_y = -1e300;
    for (int i = 0; i < 3; ++i) {
      const Vec2& p = screen.pos[face[i]];
      lo_x = std::min(lo_x, p.x);
      lo_y = std::min(lo_y, p.y);
      hi_x = std::max(hi_x, p.x);
      hi_y = std::max(hi_y, p.y);
    }
    const int bx0 = std::max(0, static_cast<int>((lo_x - cutoff) / bins.cell));
    const int by0 = std::max(0, static_cast<int>((lo_y - cutoff) / bins.cell));
    const int bx1 = std::min(bins.nx - 1,
                             static_cast<int>((hi_x + cutoff) / bins.cell));
    const int by1 = std::min(bins.ny - 1,
                             static_cast<int>((hi_y + cutoff) / bins.cell));
    for (int by = by0; by <= by1; ++by) {
      for (int bx = bx0; bx <= bx1; ++bx) {
        bins.faces[static_cast<std::size_t>(by) * bins.nx + bx].push_back(f);
      }
    }
  }
  return bins;
}

void check_settings(const SoftRasterSettings& settings) {
  if (!(settings.sharpness > 0.0)) {
    throw std::invalid_argument("sharpness must be positive");
  }
  if (!(settings.distance_cutoff > 0.0)) {
    throw std::invalid_argument("distance_cutoff must be positive");
  }
}

}  // namespace

Image soft_silhouette(const TriangleMesh& mesh, const Camera& camera,
                      const SoftRasterSettings& settings) {
  check_settings(settings);
  if (mesh.vertices.empty()) {
    throw std::invalid_argument("cannot rasterize an empty mesh");
  }

  const Screen screen = project_vertices(mesh, camera);
  const Bins bins = build_bins(mesh, screen, camera, settings.distance_cutoff);
  const double cutoff2 = settings.distance_cutoff * settings.distance_cutoff;
  const double inv_h = 1.0 / camera.height();
  const int width = camera.width();

  Image out(camera.width(), camera.height());
  parallel_for_chunks(
      static_cast<std::size_t>(camera.height()),
      resolve_thread_count(settings.threads),
      [&](int, std::size_t row_begin, std::size_t row_end) {
        for (std::size_t y = row_begin; y < row_end; ++y) {
          for (int x = 0; x < width; ++x) {
            const Vec2 p{(x + 0.5) * inv_h,
                         (static_cast<double>(y) + 0.5) * inv_h};
            double not_covered = 1.0;
            for (int f : bins.at(p.x, p.y)) {
              const auto& face = mesh.faces[f];
              const Vec2 tri[3] = {screen.pos[face[0]], screen.pos[face[1]],
                                   screen.pos[face[2]]};
              const TriDist dist = point_triangle_dist2(p, tri);
              if (!dist.inside && dist.boundary_d2 > cutoff2) continue;
              const double sign = dist.inside ? 1.0 : -1.0;
              const double coverage =
                  sigmoid(sign * dist.boundary_d2 / settings.sharpness);
              not_covered *= 1.0 - coverage;
            }
            out.at(x, static_cast<int>(y)) = 1.0 - not_covered;
          }
        }
      });
  return out;
}

std::vector<Vec3> soft_silhouette_backward(const TriangleMesh& mesh,
                                           const Camera& camera,
                                           const SoftRasterSettings& settings,
                                           const Image& upstream) {
  check_settings(settings);
  if (mesh.vertices.empty()) {
    throw std::invalid_argument("cannot rasterize an empty mesh");
  }
  if (upstream.width() != camera.width() ||
      upstream.height() != camera.height()) {
    throw std::invalid_argument("upstream image does not match camera raster");
  }

  const Screen screen = project_vertices(mesh, camera);
  const Bins bins = build_bins(mesh, screen, camera, settings.distance_cutoff);
  const Projector projector{&camera, &screen};
  const double cutoff2 = settings.distance_cutoff * settings.distance_cutoff;
  const double inv_h = 1.0 / camera.height();
  const int width = camera.width();
  const int workers = std::min<int>(resolve_thread_count(settings.threads),
                                    camera.height());

  std::vector<std::vector<Vec3>> partial(
      workers, std::vector<Vec3>(mesh.vertices.size()));

  struct Hit {
    int face;
    double coverage;
    TriDist dist;
  };

  parallel_for_chunks(
      static_cast<std::size_t>(camera.height()), workers,
      [&](int worker, std::size_t row_begin, std::size_t row_end) {
        std::vector<Vec3>& grad = partial[worker];
        std::vector<Hit> hits;
        std::vector<double> suffix;
        for (std::size_t y = row_begin; y < row_end; ++y) {
          for (int x = 0; x < width; ++x) {
            const double up = upstream.at(x, static_cast<int>(y));
            if (up == 0.0) continue;
            const Vec2 p{(x + 0.5) * inv_h,
                         (static_cast<double>(y) + 0.5) * inv_h};

            hits.clear();
            for (int f : bins.at(p.x, p.y)) {
              const auto& face = mesh.faces[f];
              const Vec2 tri[3] = {screen.pos[face[0]], screen.pos[face[1]],
                                   screen.pos[face[2]]};
              const TriDist dist = point_triangle_dist2(p, tri);
              if (!dist.inside && dist.boundary_d2 > cutoff2) continue;
              const double sign = dist.inside ? 1.0 : -1.0;
              const double coverage =
                  sigmoid(sign * dist.boundary_d2 / settings.sharpness);
              hits.push_back({f, coverage, dist});
            }
            if (hits.empty()) continue;

            // d(pixel)/d(D_j) = prod_{k != j} (1 - D_k), via prefix/suffix
            // products so saturated factors (D = 1) stay well defined.
            suffix.assign(hits.size() + 1, 1.0);
            for (std::size_t j = hits.size(); j > 0; --j) {
              suffix[j - 1] = suffix[j] * (1.0 - hits[j - 1].coverage);
            }
            double prefix = 1.0;
            for (std::size_t j = 0; j < hits.size(); ++j) {
              const Hit& hit = hits[j];
              const double d_pixel_d_cov = prefix * suffix[j + 1];
              prefix *= 1.0 - hit.coverage;

              const double sign = hit.dist.inside ? 1.0 : -1.0;
              const double d_cov_d_d2 = hit.coverage * (1.0 - hit.coverage) *
                                        sign / settings.sharpness;
              const double scale = up * d_pixel_d_cov * d_cov_d_d2;
              if (scale == 0.0) continue;

              const auto& face = mesh.faces[hit.face];
              const Vec2 tri[3] = {screen.pos[face[0]], screen.pos[face[1]],
                                   screen.pos[face[2]]};
              if (hit.dist.feature < 3) {
                // d(d^2)/d(vertex) = 2 (v - p)
                const int v = hit.dist.feature;
                const Vec2 g{2.0 * (tri[v].x - p.x) * scale,
                             2.0 * (tri[v].y - p.y) * scale};
                grad[face[v]] += projector.world_grad(face[v], g);
              } else {
                // Edge (a, b) at parameter t with q = p - (a + t (b - a)):
                // d(d^2)/da = -2 (1 - t) q, d(d^2)/db = -2 t q.
                const int e = hit.dist.feature - 3;
                const int ia = e;
                const int ib = (e + 1) % 3;
                const double t = hit.dist.t;
                const Vec2 a = tri[ia];
                const Vec2 b = tri[ib];
                const Vec2 q{p.x - (a.x + t * (b.x - a.x)),
                             p.y - (a.y + t * (b.y - a.y))};
                const Vec2 ga{-2.0 * (1.0 - t) * q.x * scale,
                              -2.0 * (1.0 - t) * q.y * scale};
                const Vec2 gb{-2.0 * t * q.x * scale, -2.0 * t * q.y * scale};
                grad[face[ia]] += projector.world_grad(face[ia], ga);
                grad[face[ib]] += projector.world_grad(face[ib], gb);
              }
            }
          }
        }
      });

  std::vector<Vec3> grad = std::move(partial[0]);
  for (int w = 1; w < workers; ++w) {
    for (std::size_t i = 0; i < grad.size(); ++i) grad[i] += partial[w][i];
  }
  return grad;
}

}  // namespace umbra
