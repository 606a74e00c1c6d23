// Acceptance suite: one test case per criterion, one [PASS]/[FAIL] line each.

#include <umbra/blocky.hpp>
#include <umbra/gradient_check.hpp>
#include <umbra/mesh_losses.hpp>
#include <umbra/metrics.hpp>
#include <umbra/optimize.hpp>
#include <umbra/validate.hpp>
#include <umbra/visual_hull.hpp>

#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace umbra;

namespace {

constexpr double kPi = 3.14159265358979323846;

class Criterion {
 public:
  explicit Criterion(std::string name) : name_(std::move(name)) {
    start_ = std::chrono::steady_clock::now();
  }

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      ok_ = false;
      notes_ += (notes_.empty() ? "" : "; ") + what;
    }
  }

  void finish() {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      start_)
            .count();
    std::printf("[%s] %s (%.1fs)%s%s\n", ok_ ? "PASS" : "FAIL", name_.c_str(),
                secs, notes_.empty() ? "" : " -- ", notes_.c_str());
    std::fflush(stdout);
    CHECK_MESSAGE(ok_, name_, ": ", notes_);
  }

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::string name_;
  bool ok_ = true;
  std::string notes_;
  std::chrono::steady_clock::time_point start_;
};

Camera axis_view(int axis, int size, double window) {
  const double azimuths[3] = {0.0, kPi / 2, 0.0};
  const double elevations[3] = {0.0, 0.0, kPi / 2};
  return camera_from_view_spec(azimuths[axis], elevations[axis], 3.0,
                               Projection::kOrthographic, window, size, size);
}

ShadowConfiguration make_view(const std::string& name, Image img,
                              Camera camera) {
  TargetImage t;
  t.mode = TargetMode::kBinary;
  t.image = std::move(img);
  return {name, std::move(t), std::move(camera)};
}

std::vector<double> flatten(const std::vector<Vec3>& vecs) {
  std::vector<double> out;
  out.reserve(vecs.size() * 3);
  for (const Vec3& v : vecs) {
    out.push_back(v.x);
    out.push_back(v.y);
    out.push_back(v.z);
  }
  return out;
}

// --- exact axis-aligned silhouette oracle ---------------------------------
//
// With the view window matched to the cube (half-height = extent/2) and the
// image size an integer multiple of the grid resolution, each voxel covers
// an exact pixel block, so the silhouette of a voxel solid is computable
// without any renderer. Axis: 0 = +x view, 1 = +y view, 2 = +z view.
Image exact_box_silhouette(const BinaryOccupancy& occ, int axis, int size) {
  const int d = occ.resolution;
  const int scale = size / d;
  Image out(size, size, 0.0);
  for (int z = 0; z < d; ++z) {
    for (int y = 0; y < d; ++y) {
      for (int x = 0; x < d; ++x) {
        if (!occ.occupied[occ.index(x, y, z)]) continue;
        // project the voxel cube; mirror/swap per camera basis
        int px;
        int py;
        if (axis == 0) {
          // camera on +x: right = +y, down = -z
          px = y;
          py = d - 1 - z;
        } else if (axis == 1) {
          // camera on +y: right = -x, down = -z
          px = d - 1 - x;
          py = d - 1 - z;
        } else {
          // camera on +z (pole, up = +x): right/down from the tie-break
          px = d - 1 - y;
          py = d - 1 - x;
        }
        for (int dy = 0; dy < scale; ++dy) {
          for (int dx = 0; dx < scale; ++dx) {
            out.at(px * scale + dx, py * scale + dy) = 1.0;
          }
        }
      }
    }
  }
  return out;
}

// Verifies the pixel-block mapping above against the camera projection so
// the oracle cannot drift from the geometry conventions.
bool oracle_matches_projection(const BinaryOccupancy& occ, int axis,
                               int size) {
  const Camera cam = axis_view(axis, size, occ.extent / 2.0);
  const Image oracle = exact_box_silhouette(occ, axis, size);
  const Image dots = occupancy_silhouette(occ, cam);
  // every voxel-center dot must land inside the oracle silhouette
  for (std::size_t i = 0; i < dots.size(); ++i) {
    if (dots.pixels()[i] >= 0.5 && oracle.pixels()[i] < 0.5) return false;
  }
  return true;
}

BinaryOccupancy l_shape_occupancy(int d, double extent) {
  BinaryOccupancy occ(d, extent);
  const int a = d / 6;
  const int b = d - d / 6;
  const int mid = d / 2;
  for (int z = a; z < b; ++z) {
    for (int y = a; y < b; ++y) {
      for (int x = a; x < mid; ++x) occ.occupied[occ.index(x, y, z)] = 1;
    }
  }
  for (int z = a; z < mid; ++z) {
    for (int y = a; y < b; ++y) {
      for (int x = a; x < b; ++x) occ.occupied[occ.index(x, y, z)] = 1;
    }
  }
  return occ;
}

// --- letter targets for the end-to-end run --------------------------------

void fill_rect(Image* img, int x0, int y0, int x1, int y1) {
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) img->at(x, y) = 1.0;
  }
}

// Chunky block letters on a 64x64 raster, inside the carve-safe region.
Image letter_image(char letter, int size) {
  Image img(size, size, 0.0);
  const int m = size / 8;          // margin
  const int t = size / 8;          // stroke thickness
  const int lo = m;
  const int hi = size - m;
  switch (letter) {
    case 'U':
      fill_rect(&img, lo, lo, lo + t, hi);
      fill_rect(&img, hi - t, lo, hi, hi);
      fill_rect(&img, lo, hi - t, hi, hi);
      break;
    case 'H':
      fill_rect(&img, lo, lo, lo + t, hi);
      fill_rect(&img, hi - t, lo, hi, hi);
      fill_rect(&img, lo, (size - t) / 2, hi, (size + t) / 2);
      break;
    case 'O':
    default:
      fill_rect(&img, lo, lo, hi, lo + t);
      fill_rect(&img, lo, hi - t, hi, hi);
      fill_rect(&img, lo, lo, lo + t, hi);
      fill_rect(&img, hi - t, lo, hi, hi);
      break;
  }
  return img;
}

Image disc_image(int size, double radius_px) {
  Image img(size, size, 0.0);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double dx = x + 0.5 - size / 2.0;
      const double dy = y + 0.5 - size / 2.0;
      if (dx * dx + dy * dy <= radius_px * radius_px) img.at(x, y) = 1.0;
    }
  }
  return img;
}

// Four-pointed star (nonconvex), for the ablation runs.
Image star_image(int size, double r_outer, double r_inner) {
  Image img(size, size, 0.0);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double dx = std::abs(x + 0.5 - size / 2.0);
      const double dy = std::abs(y + 0.5 - size / 2.0);
      // diamond |x|+|y| <= r_inner plus axis spikes out to r_outer
      const bool diamond = dx + dy <= r_inner;
      const bool spike_x = dy <= r_inner * (1.0 - dx / r_outer) * 0.35;
      const bool spike_y = dx <= r_inner * (1.0 - dy / r_outer) * 0.35;
      if (diamond || (dx <= r_outer && spike_x) || (dy <= r_outer && spike_y)) {
        img.at(x, y) = 1.0;
      }
    }
  }
  return img;
}

double final_mean(const OptimizationRun& run,
                  const std::vector<double> IterationRecord::*field) {
  const IterationRecord& last = run.history.back();
  const std::vector<double>& values = last.*field;
  double total = 0.0;
  for (double v : values) total += v;
  return total / static_cast<double>(values.size());
}

double max_edge_length(const TriangleMesh& mesh, const MeshTopology& topo) {
  double longest = 0.0;
  for (const MeshEdge& e : topo.edges) {
    longest = std::max(longest,
                       norm(mesh.vertices[e.v0] - mesh.vertices[e.v1]));
  }
  return longest;
}

double mean_laplacian_magnitude(const TriangleMesh& mesh,
                                const MeshTopology& topo) {
  const std::vector<Vec3> lap = uniform_laplacians(mesh, topo);
  double total = 0.0;
  for (const Vec3& v : lap) total += norm(v);
  return total / static_cast<double>(lap.size());
}

struct MeshRunSetup {
  std::vector<ShadowConfiguration> views;
  TriangleMesh source;
  SoftRasterSettings settings;
  OptimizeOptions options;
};

// Shared geometry for the mesh acceptance runs: three orthogonal views,
// zoomed-in windows so the image term dominates at the paper weights.
MeshRunSetup mesh_star_setup(int budget) {
  MeshRunSetup setup;
  const int size = 48;
  const double window = 0.25;
  const Image star = star_image(size, 20.0, 13.0);
  for (int axis = 0; axis < 3; ++axis) {
    setup.views.push_back(make_view("v" + std::to_string(axis), star,
                                    axis_view(axis, size, window)));
  }
  setup.source = icosphere(2, 0.14);
  setup.settings.sharpness = 1e-4;
  setup.settings.distance_cutoff = 0.05;
  setup.options.budget = budget;
  setup.options.lr = 2e-3;
  return setup;
}

}  // namespace

TEST_CASE("acceptance: gradient_fidelity") {
  Criterion crit("gradient fidelity (voxel <= 1e-3, mesh <= 1e-2)");

  // voxel adjoint on random 8^3 grids, 16x16 images
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  for (int trial = 0; trial < 2; ++trial) {
    VoxelGrid grid(8, 1.7, 0.0);
    for (double& l : grid.logits) l = uni(rng);
    RenderSettings settings = default_render_settings(grid);
    settings.samples_per_ray = 32;
    const Camera cam = camera_from_view_spec(
        0.3 + trial, 0.25, 3.0, Projection::kOrthographic, 0.9, 16, 16);
    Image upstream(16, 16);
    for (double& v : upstream.pixels()) v = uni(rng);

    auto loss = [&](std::span<const double> logits) {
      VoxelGrid g = grid;
      g.logits.assign(logits.begin(), logits.end());
      const Image img = render_silhouette(g, cam, settings);
      double total = 0.0;
      for (std::size_t i = 0; i < img.size(); ++i) {
        total += upstream.pixels()[i] * img.pixels()[i];
      }
      return total;
    };
    const std::vector<double> analytic =
        render_silhouette_backward(grid, cam, settings, upstream);
    GradientCheckOptions opts;
    opts.epsilon = 1e-3;
    opts.tolerance = 1e-3;
    opts.max_coords = 96;
    opts.seed = 7 + trial;
    const GradientCheckReport report =
        gradient_check(loss, grid.logits, analytic, opts);
    crit.expect(report.checked >= 64 && report.max_rel_error <= 1e-3,
                "voxel adjoint max rel err " +
                    std::to_string(report.max_rel_error));
  }

  // mesh silhouette adjoint on level-0/1 icospheres
  for (int level = 0; level <= 1; ++level) {
    TriangleMesh mesh = icosphere(level, 0.5);
    for (Vec3& v : mesh.vertices) {
      v += Vec3{0.03 * uni(rng), 0.03 * uni(rng), 0.03 * uni(rng)};
    }
    const Camera cam = camera_from_view_spec(
        0.4 + level, 0.3, 3.0,
        level == 0 ? Projection::kPerspective : Projection::kOrthographic,
        level == 0 ? 0.6 : 0.9, 16, 16);
    SoftRasterSettings settings;
    settings.sharpness = 2e-3;
    settings.distance_cutoff = 0.3;
    Image upstream(16, 16);
    for (double& v : upstream.pixels()) v = uni(rng);

    auto loss = [&](std::span<const double> flat) {
      TriangleMesh probe = mesh;
      for (std::size_t i = 0; i < probe.vertices.size(); ++i) {
        probe.vertices[i] = {flat[3 * i], flat[3 * i + 1], flat[3 * i + 2]};
      }
      const Image img = soft_silhouette(probe, cam, settings);
      double total = 0.0;
      for (std::size_t i = 0; i < img.size(); ++i) {
        total += upstream.pixels()[i] * img.pixels()[i];
      }
      return total;
    };
    const std::vector<double> params = flatten(mesh.vertices);
    const std::vector<double> analytic =
        flatten(soft_silhouette_backward(mesh, cam, settings, upstream));
    GradientCheckOptions opts;
    opts.epsilon = 1e-5;
    opts.tolerance = 1e-2;
    opts.max_coords = 96;
    opts.skip_kinks = true;
    const GradientCheckReport report =
        gradient_check(loss, params, analytic, opts);
    crit.expect(report.checked >= 48 && report.max_rel_error <= 1e-2,
                "mesh silhouette level " + std::to_string(level) +
                    " max rel err " + std::to_string(report.max_rel_error));
  }

  // the three regularizers on a perturbed level-1 icosphere
  {
    TriangleMesh mesh = icosphere(1, 1.0);
    for (Vec3& v : mesh.vertices) {
      v += Vec3{0.04 * uni(rng), 0.04 * uni(rng), 0.04 * uni(rng)};
    }
    const MeshTopology topo = MeshTopology::build(mesh);
    struct Case {
      const char* name;
      LossResult (*fn)(const TriangleMesh&, const MeshTopology&);
      bool kinks;
    };
    const Case cases[] = {{"normal", &normal_consistency_loss, false},
                          {"laplacian", &laplacian_loss, true},
                          {"edge", &edge_length_loss, false}};
    for (const Case& c : cases) {
      const LossResult res = c.fn(mesh, topo);
      auto loss = [&](std::span<const double> flat) {
        TriangleMesh probe = mesh;
        for (std::size_t i = 0; i < probe.vertices.size(); ++i) {
          probe.vertices[i] = {flat[3 * i], flat[3 * i + 1], flat[3 * i + 2]};
        }
        return c.fn(probe, topo).value;
      };
      GradientCheckOptions opts;
      opts.epsilon = 1e-6;
      opts.tolerance = 1e-2;
      opts.max_coords = 96;
      opts.skip_kinks = c.kinks;
      const GradientCheckReport report = gradient_check(
          loss, flatten(mesh.vertices), flatten(res.gradients), opts);
      crit.expect(report.checked >= 64 && report.max_rel_error <= 1e-2,
                  std::string(c.name) + " loss max rel err " +
                      std::to_string(report.max_rel_error));
    }
  }

  crit.expect(crit.elapsed() <= 60.0, "runtime over 60s");
  crit.finish();
}

TEST_CASE("acceptance: oracle_equivalence") {
  Criterion crit("oracle equivalence (carve IoU = 1.0, optimize IoU >= 0.98)");

  const int d = 32;
  const int size = 64;
  const double extent = 1.7;
  const double window = extent / 2.0;  // voxels cover exact 2x2 pixel blocks
  const BinaryOccupancy shape = l_shape_occupancy(d, extent);

  std::vector<ShadowConfiguration> views;
  for (int axis = 0; axis < 3; ++axis) {
    crit.expect(oracle_matches_projection(shape, axis, size),
                "pixel-block oracle disagrees with the camera on axis " +
                    std::to_string(axis));
    views.push_back(make_view("v" + std::to_string(axis),
                              exact_box_silhouette(shape, axis, size),
                              axis_view(axis, size, window)));
  }

  // carve: silhouettes of the hull equal the targets exactly
  const BinaryOccupancy hull = carve_visual_hull(views, d, extent);
  for (std::size_t i = 0; i < shape.occupied.size(); ++i) {
    if (shape.occupied[i] && !hull.occupied[i]) {
      crit.expect(false, "hull lost a generating voxel");
      break;
    }
  }
  for (int axis = 0; axis < 3; ++axis) {
    const double v =
        iou(exact_box_silhouette(hull, axis, size), views[axis].target.image);
    crit.expect(v == 1.0,
                "carve IoU " + std::to_string(v) + " on axis " +
                    std::to_string(axis));
  }

  // optimize from the default init (logit 1.0 everywhere)
  VoxelGrid init(d, extent, 1.0);
  RenderSettings settings = default_render_settings(init);
  settings.opacity_scale = 8.0 / extent;
  OptimizeOptions opts;
  opts.budget = 500;
  opts.lr = 0.05;
  opts.threads = 2;
  const auto [grid, run] =
      optimize_voxel(views, init, settings, LossWeights{}, opts);
  for (std::size_t i = 0; i < views.size(); ++i) {
    const double v = run.history.back().iou[i];
    crit.expect(v >= 0.98, "optimized view " + std::to_string(i) + " IoU " +
                               std::to_string(v));
  }

  crit.expect(crit.elapsed() <= 300.0, "runtime over 5 min");
  crit.finish();
}

TEST_CASE("acceptance: shadow_art_end_to_end") {
  Criterion crit(
      "shadow art end to end (mean IoU >= 0.90, dice >= 0.94, smoothed loss "
      "nonincreasing)");

  const int size = 64;
  const int d = 64;
  const double extent = 1.7;
  const double window = extent / 2.0;

  std::vector<ShadowConfiguration> views;
  const char letters[3] = {'U', 'H', 'O'};
  for (int axis = 0; axis < 3; ++axis) {
    views.push_back(make_view(std::string(1, letters[axis]),
                              letter_image(letters[axis], size),
                              axis_view(axis, size, window)));
  }

  VoxelGrid init(d, extent, 1.0);
  RenderSettings settings = default_render_settings(init);
  settings.opacity_scale = 8.0 / extent;
  settings.samples_per_ray = d;  // sub-voxel enough for axis views
  LossWeights weights;           // lambda1 = lambda2 = 10 per the image loss
  OptimizeOptions opts;
  opts.budget = 400;
  opts.lr = 0.05;
  opts.threads = 2;

  const auto [grid, run] =
      optimize_voxel(views, init, settings, weights, opts);

  const double mean_iou = final_mean(run, &IterationRecord::iou);
  const double mean_dice = final_mean(run, &IterationRecord::dice);
  crit.expect(mean_iou >= 0.90, "mean IoU " + std::to_string(mean_iou));
  crit.expect(mean_dice >= 0.94, "mean dice " + std::to_string(mean_dice));

  // smoothed total loss (window 10) never increases
  const int window_n = 10;
  std::vector<double> smoothed;
  for (std::size_t i = 0; i + window_n <= run.history.size(); ++i) {
    double s = 0.0;
    for (int k = 0; k < window_n; ++k) s += run.history[i + k].l_total;
    smoothed.push_back(s / window_n);
  }
  for (std::size_t i = 1; i < smoothed.size(); ++i) {
    if (smoothed[i] > smoothed[i - 1] + 1e-9) {
      crit.expect(false, "smoothed loss rose at iteration " +
                             std::to_string(i + window_n - 1));
      break;
    }
  }

  crit.expect(crit.elapsed() <= 600.0, "runtime over 10 min");
  crit.finish();
}

TEST_CASE("acceptance: mesh_pipeline") {
  Criterion crit("mesh pipeline (three circles, per-view IoU >= 0.97)");

  const int size = 64;
  const double window = 0.25;
  const double sphere_radius = 0.17;
  const double radius_px = sphere_radius / window * (size / 2.0);

  std::vector<ShadowConfiguration> views;
  for (int axis = 0; axis < 3; ++axis) {
    views.push_back(make_view("v" + std::to_string(axis),
                              disc_image(size, radius_px),
                              axis_view(axis, size, window)));
  }

  const TriangleMesh source = icosphere(2, 0.14);
  SoftRasterSettings settings;  // paper-scale sharpness and cutoff
  LossWeights weights;          // lambda_a..d = 1.6, 2.1, 0.9, 1.8
  OptimizeOptions opts;
  opts.budget = 400;
  opts.lr = 2e-3;
  opts.threads = 2;

  const MeshOptimizeResult result =
      optimize_mesh(views, source, settings, weights, opts);
  for (std::size_t i = 0; i < views.size(); ++i) {
    const double v = result.run.history.back().iou[i];
    crit.expect(v >= 0.97, "view " + std::to_string(i) + " IoU " +
                               std::to_string(v));
  }

  crit.expect(crit.elapsed() <= 600.0, "runtime over 10 min");
  crit.finish();
}

TEST_CASE("acceptance: ablation_reproduction") {
  Criterion crit(
      "ablation (edge/lap/norm paired-run inequalities, margin >= 5%)");

  const int budget = 200;
  const MeshRunSetup base = mesh_star_setup(budget);

  LossWeights full;  // paper weights
  LossWeights no_edge = full;
  no_edge.lambda_edge = 0.0;
  LossWeights no_lap = full;
  no_lap.lambda_lap = 0.0;
  LossWeights no_norm = full;
  no_norm.lambda_norm = 0.0;

  auto run_with = [&](const LossWeights& w) {
    return optimize_mesh(base.views, base.source, base.settings, w,
                         base.options);
  };

  const MeshOptimizeResult with_all = run_with(full);
  const MeshOptimizeResult without_edge = run_with(no_edge);
  const MeshOptimizeResult without_lap = run_with(no_lap);
  const MeshOptimizeResult without_norm = run_with(no_norm);

  const MeshTopology topo = MeshTopology::build(base.source);

  const double edge_with = max_edge_length(with_all.mesh, topo);
  const double edge_without = max_edge_length(without_edge.mesh, topo);
  crit.expect(edge_without >= 1.05 * edge_with,
              "max edge " + std::to_string(edge_without) + " vs " +
                  std::to_string(edge_with));

  const double lap_with = mean_laplacian_magnitude(with_all.mesh, topo);
  const double lap_without = mean_laplacian_magnitude(without_lap.mesh, topo);
  crit.expect(lap_without >= 1.05 * lap_with,
              "mean laplacian " + std::to_string(lap_without) + " vs " +
                  std::to_string(lap_with));

  // adding L_norm raises the normal-consistency metric: compare roughness
  // (1 - metric) with a 5% margin
  const double nc_with = normal_consistency_metric(with_all.mesh, topo);
  const double nc_without = normal_consistency_metric(without_norm.mesh, topo);
  crit.expect(1.0 - nc_without >= 1.05 * (1.0 - nc_with),
              "normal consistency " + std::to_string(nc_with) + " vs " +
                  std::to_string(nc_without) + " without");

  crit.expect(crit.elapsed() <= 600.0, "runtime over 10 min");
  crit.finish();
}

TEST_CASE("acceptance: structural_constants") {
  Criterion crit("structural constants (icosphere 2562/5120, cube 12 tris)");

  const TriangleMesh ico = icosphere(4, 1.0);
  crit.expect(ico.vertex_count() == 2562,
              "level-4 vertices " + std::to_string(ico.vertex_count()));
  crit.expect(ico.face_count() == 5120,
              "level-4 faces " + std::to_string(ico.face_count()));

  VoxelGrid grid(4, 1.0, -10.0);
  grid.logits[grid.index(1, 1, 1)] = 10.0;
  const TriangleMesh cube = extract_blocky_mesh(grid, 0.5);
  crit.expect(cube.face_count() == 12,
              "blocky single voxel " + std::to_string(cube.face_count()) +
                  " triangles");

  const MeshValidationReport ico_report = validate_mesh(ico);
  const MeshValidationReport cube_report = validate_mesh(cube);
  crit.expect(ico_report.watertight && ico_report.consistent_orientation,
              "icosphere not watertight");
  crit.expect(cube_report.watertight && cube_report.consistent_orientation,
              "blocky cube not watertight");

  crit.finish();
}

TEST_CASE("acceptance: metric_identities") {
  Criterion crit("metric identities (dice = 2 iou/(1+iou) on 1000 pairs)");

  std::mt19937_64 rng(211);
  std::bernoulli_distribution coin(0.5);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    Image a(8, 8);
    Image b(8, 8);
    std::uniform_real_distribution<double> density(0.05, 0.95);
    std::bernoulli_distribution ca(density(rng));
    std::bernoulli_distribution cb(density(rng));
    for (std::size_t i = 0; i < a.size(); ++i) {
      a.pixels()[i] = ca(rng) ? 1.0 : 0.0;
      b.pixels()[i] = cb(rng) ? 1.0 : 0.0;
    }
    const double i1 = iou(a, b);
    const double d1 = dice(a, b);
    worst = std::max(worst, std::abs(d1 - 2.0 * i1 / (1.0 + i1)));
  }
  crit.expect(worst <= 1e-12, "max identity error " + std::to_string(worst));
  crit.finish();
}

TEST_CASE("acceptance: determinism") {
  Criterion crit(
      "determinism (identical seeded histories; parallel within 1e-6)");

  const int size = 24;
  Image square(size, size, 0.0);
  fill_rect(&square, 6, 6, 18, 18);
  std::vector<ShadowConfiguration> views{
      make_view("a", square, axis_view(0, size, 0.85)),
      make_view("b", square, axis_view(1, size, 0.85))};

  VoxelGrid init(16, 1.7, 1.0);
  RenderSettings settings = default_render_settings(init);
  settings.opacity_scale = 8.0 / 1.7;
  OptimizeOptions opts;
  opts.budget = 30;
  opts.lr = 0.05;
  opts.seed = 42;

  const auto [g1, r1] = optimize_voxel(views, init, settings, LossWeights{}, opts);
  const auto [g2, r2] = optimize_voxel(views, init, settings, LossWeights{}, opts);
  crit.expect(history_jsonl(r1) == history_jsonl(r2),
              "single-threaded reruns differ");

  OptimizeOptions par = opts;
  par.threads = 4;
  const auto [g3, r3] = optimize_voxel(views, init, settings, LossWeights{}, par);
  crit.expect(r1.history.size() == r3.history.size(), "history sizes differ");
  double worst = 0.0;
  for (std::size_t i = 0; i < r1.history.size(); ++i) {
    worst = std::max(worst, std::abs(r1.history[i].l_total -
                                     r3.history[i].l_total));
    for (std::size_t v = 0; v < r1.history[i].iou.size(); ++v) {
      worst = std::max(worst, std::abs(r1.history[i].iou[v] -
                                       r3.history[i].iou[v]));
    }
  }
  crit.expect(worst <= 1e-6,
              "parallel deviation " + std::to_string(worst));

  // mesh pipeline determinism
  const TriangleMesh source = icosphere(1, 0.4);
  SoftRasterSettings raster;
  OptimizeOptions mesh_opts;
  mesh_opts.budget = 15;
  mesh_opts.lr = 1e-3;
  const MeshOptimizeResult m1 =
      optimize_mesh(views, source, raster, LossWeights{}, mesh_opts);
  const MeshOptimizeResult m2 =
      optimize_mesh(views, source, raster, LossWeights{}, mesh_opts);
  crit.expect(history_jsonl(m1.run) == history_jsonl(m2.run),
              "mesh reruns differ");

  crit.finish();
}
