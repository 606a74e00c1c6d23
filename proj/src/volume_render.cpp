#include <umbra/volume_render.hpp>

#include <umbra/parallel.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace umbra {

namespace {

struct Span {
  double t0 = 0.0;
  double t1 = 0.0;
  bool hit = false;
};

// Slab intersection with the cube [-extent/2, extent/2]^3, clipped to t >= 0.
Span intersect_cube(const Ray& ray, double extent) {
  const double half = extent / 2.0;
  double t0 = 0.0;
  double t1 = std::numeric_limits<double>::infinity();
  for (int axis = 0; axis < 3; ++axis) {
    const double o = ray.origin[axis];
    const double d = ray.direction[axis];
    if (std::abs(d) < 1e-15) {
      if (o < -half || o > half) return {};
      continue;
    }
    double ta = (-half - o) / d;
    double tb = (half - o) / d;
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
  }
  if (t1 <= t0) return {};
  return {t0, t1, true};
}

// Trilinear taps for a world point: 8 voxel indices and weights under the
// cell-center convention, clamped at the grid border.
struct Taps {
  std::size_t index[8];
  double weight[8];
};

inline Taps trilinear_taps(const VoxelGrid& grid, const Vec3& p) {
  const double h = grid.spacing();
  const double half = grid.extent / 2.0;
  const int d = grid.resolution;

  int i0[3];
  int i1[3];
  double f[3];
  const double coord[3] = {p.x, p.y, p.z};
  for (int axis = 0; axis < 3; ++axis) {
    const double g = (coord[axis] + half) / h - 0.5;
    const double fl = std::floor(g);
    f[axis] = g - fl;
    i0[axis] = std::clamp(static_cast<int>(fl), 0, d - 1);
    i1[axis] = std::clamp(static_cast<int>(fl) + 1, 0, d - 1);
  }

  Taps taps;
  int n = 0;
  for (int dz = 0; dz < 2; ++dz) {
    for (int dy = 0; dy < 2; ++dy) {
      for (int dx = 0; dx < 2; ++dx) {
        const int ix = dx ? i1[0] : i0[0];
        const int iy = dy ? i1[1] : i0[1];
        const int iz = dz ? i1[2] : i0[2];
        const double w = (dx ? f[0] : 1.0 - f[0]) *
                         (dy ? f[1] : 1.0 - f[1]) *
                         (dz ? f[2] : 1.0 - f[2]);
        taps.index[n] = grid.index(ix, iy, iz);
        taps.weight[n] = w;
        ++n;
      }
    }
  }
  return taps;
}

inline double sample_density(const VoxelGrid& grid,
                             const std::vector<double>& dens, const Vec3& p) {
  const Taps taps = trilinear_taps(grid, p);
  double v = 0.0;
  for (int i = 0; i < 8; ++i) v += taps.weight[i] * dens[taps.index[i]];
  return v;
}

// splitmix64; replayable per-(pixel, sample) jitter stream.
inline double jitter01(std::uint64_t seed, std::uint64_t pixel,
                       std::uint64_t sample) {
  std::uint64_t x = seed + 0x9e3779b97f4a7c15ull * (pixel * 8192 + sample + 1);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

void check_settings(const RenderSettings& settings) {
  if (settings.samples_per_ray < 2) {
    throw std::invalid_argument("samples_per_ray must be >= 2");
  }
  if (!(settings.opacity_scale > 0.0)) {
    throw std::invalid_argument("opacity_scale must be positive");
  }
}

}  // namespace

RenderSettings default_render_settings(const VoxelGrid& grid) {
  RenderSettings s;
  s.samples_per_ray = 2 * grid.resolution;
  s.step_jitter = false;
  s.opacity_scale = 30.0 / grid.extent;
  return s;
}

Image render_silhouette(const VoxelGrid& grid, const Camera& camera,
                        const RenderSettings& settings) {
  check_settings(settings);
  const std::vector<double> dens = densities(grid);
  const double color = grid.fixed_color;
  Image out(camera.width(), camera.height());

  const int width = camera.width();
  const int samples = settings.samples_per_ray;
  const double kappa = settings.opacity_scale;

  parallel_for_chunks(
      static_cast<std::size_t>(camera.height()),
      resolve_thread_count(settings.threads),
      [&](int, std::size_t row_begin, std::size_t row_end) {
        for (std::size_t y = row_begin; y < row_end; ++y) {
          for (int x = 0; x < width; ++x) {
            const Ray ray = pixel_ray(camera, x + 0.5, y + 0.5);
            const Span span = intersect_cube(ray, grid.extent);
            if (!span.hit) continue;

            const double dt = (span.t1 - span.t0) / samples;
            const std::uint64_t pix = y * width + x;
            double transmittance = 1.0;
            for (int k = 0; k < samples; ++k) {
              double off = 0.5;
              if (settings.step_jitter) {
                off = jitter01(settings.jitter_seed, pix, k);
              }
              const Vec3 p =
                  ray.origin + ray.direction * (span.t0 + (k + off) * dt);
              const double d = sample_density(grid, dens, p);
              const double alpha = 1.0 - std::exp(-kappa * d * dt);
              transmittance *= 1.0 - alpha;
            }
            out.at(x, static_cast<int>(y)) = color * (1.0 - transmittance);
          }
        }
      });
  return out;
}

std::vector<double> render_silhouette_backward(const VoxelGrid& grid,
                                               const Camera& camera,
                                               const RenderSettings& settings,
                                               const Image& upstream) {
  check_settings(settings);
  if (upstream.width() != camera.width() ||
      upstream.height() != camera.height()) {
    throw std::invalid_argument("upstream image does not match camera raster");
  }

  const std::vector<double> dens = densities(grid);
  const double color = grid.fixed_color;
  const int width = camera.width();
  const int samples = settings.samples_per_ray;
  const double kappa = settings.opacity_scale;
  const int workers = std::min<int>(resolve_thread_count(settings.threads),
                                    camera.height());

  std::vector<std::vector<double>> partial(
      workers, std::vector<double>(grid.voxel_count(), 0.0));

  parallel_for_chunks(
      static_cast<std::size_t>(camera.height()), workers,
      [&](int worker, std::size_t row_begin, std::size_t row_end) {
        std::vector<double>& grad = partial[worker];
        for (std::size_t y = row_begin; y < row_end; ++y) {
          for (int x = 0; x < width; ++x) {
            const double up = upstream.at(x, static_cast<int>(y));
            if (up == 0.0) continue;

            const Ray ray = pixel_ray(camera, x + 0.5, y + 0.5);
            const Span span = intersect_cube(ray, grid.extent);
            if (!span.hit) continue;

            const double dt = (span.t1 - span.t0) / samples;
            const std::uint64_t pix = y * width + x;

            // d(pixel)/d(d_k) = kappa*dt*exp(-kappa*d_k*dt)*prod_{j!=k}(1-a_j)
            // and the k-th exp factor is (1-a_k), so the product telescopes
            // to kappa*dt*T with T the full-ray transmittance.
            double transmittance = 1.0;
            for (int k = 0; k < samples; ++k) {
              double off = 0.5;
              if (settings.step_jitter) {
                off = jitter01(settings.jitter_seed, pix, k);
              }
              const Vec3 p =
                  ray.origin + ray.direction * (span.t0 + (k + off) * dt);
              const double d = sample_density(grid, dens, p);
              transmittance *= std::exp(-kappa * d * dt);
            }

            const double pixel_d = up * color * kappa * dt * transmittance;
            for (int k = 0; k < samples; ++k) {
              double off = 0.5;
              if (settings.step_jitter) {
                off = jitter01(settings.jitter_seed, pix, k);
              }
              const Vec3 p =
                  ray.origin + ray.direction * (span.t0 + (k + off) * dt);
              const Taps taps = trilinear_taps(grid, p);
              for (int i = 0; i < 8; ++i) {
                const double d = dens[taps.index[i]];
                grad[taps.index[i]] +=
                    pixel_d * taps.weight[i] * d * (1.0 - d);
              }
            }
          }
        }
      });

  std::vector<double> grad = std::move(partial[0]);
  for (int w = 1; w < workers; ++w) {
    for (std::size_t i = 0; i < grad.size(); ++i) grad[i] += partial[w][i];
  }
  return grad;
}

}  // namespace umbra
