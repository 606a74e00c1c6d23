#include <umbra/optimize.hpp>

#include <umbra/adam.hpp>
#include <umbra/mesh_losses.hpp>
#include <umbra/metrics.hpp>

#include <json.hpp>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace umbra {

namespace {

void check_views(const std::vector<ShadowConfiguration>& views) {
  if (views.empty()) {
    throw std::invalid_argument("optimization needs at least one view");
  }
}

void check_finite(std::span<const double> params, const char* what) {
  for (const double p : params) {
    if (!std::isfinite(p)) {
      throw std::runtime_error(std::string("non-finite ") + what +
                               " during optimization");
    }
  }
}

void record_view_metrics(IterationRecord& rec, const Image& rendered,
                         const TargetImage& target) {
  rec.iou.push_back(iou(rendered, target.image));
  rec.dice.push_back(dice(rendered, target.image));
}

}  // namespace

std::string history_jsonl(const OptimizationRun& run) {
  std::ostringstream out;
  for (const IterationRecord& rec : run.history) {
    nlohmann::json j{{"iter", rec.iter},     {"l_img", rec.l_img},
                     {"l_norm", rec.l_norm}, {"l_lap", rec.l_lap},
                     {"l_edge", rec.l_edge}, {"l_total", rec.l_total},
                     {"iou", rec.iou},       {"dice", rec.dice}};
    out << j.dump() << '\n';
  }
  return out.str();
}

std::pair<VoxelGrid, OptimizationRun> optimize_voxel(
    const std::vector<ShadowConfiguration>& views, VoxelGrid grid,
    const RenderSettings& settings, const LossWeights& weights,
    const OptimizeOptions& options) {
  check_views(views);
  for (const ShadowConfiguration& v : views) {
    if (v.target.width() != v.camera.width() ||
        v.target.height() != v.camera.height()) {
      throw std::invalid_argument("target '" + v.name +
                                  "' does not match its camera raster");
    }
  }

  RenderSettings rs = settings;
  rs.threads = options.threads;

  OptimizationRun run;
  run.budget = options.budget;
  run.seed = options.seed;
  run.history.reserve(options.budget);

  AdamState adam(grid.logits.size(), options.lr);
  std::vector<double> grad(grid.logits.size());

  for (int iter = 0; iter < options.budget; ++iter) {
    std::fill(grad.begin(), grad.end(), 0.0);
    IterationRecord rec;
    rec.iter = iter;

    for (const ShadowConfiguration& view : views) {
      const Image rendered = render_silhouette(grid, view.camera, rs);
      const ImageLoss il = image_loss(rendered, view.target.image, weights);
      rec.l_img += il.value;
      record_view_metrics(rec, rendered, view.target);

      const std::vector<double> g =
          render_silhouette_backward(grid, view.camera, rs, il.gradient);
      for (std::size_t i = 0; i < grad.size(); ++i) grad[i] += g[i];
    }
    rec.l_total = rec.l_img;
    run.history.push_back(std::move(rec));

    adam_step(grid.logits, grad, adam);
    check_finite(grid.logits, "logits");
  }
  return {std::move(grid), std::move(run)};
}

MeshOptimizeResult optimize_mesh(const std::vector<ShadowConfiguration>& views,
                                 const TriangleMesh& source,
                                 const SoftRasterSettings& settings,
                                 const LossWeights& weights,
                                 const OptimizeOptions& options) {
  check_views(views);
  if (source.empty()) {
    throw std::invalid_argument("source mesh is empty");
  }
  for (const ShadowConfiguration& v : views) {
    if (v.target.width() != v.camera.width() ||
        v.target.height() != v.camera.height()) {
      throw std::invalid_argument("target '" + v.name +
                                  "' does not match its camera raster");
    }
  }

  SoftRasterSettings rs = settings;
  rs.threads = options.threads;

  const MeshTopology topo = MeshTopology::build(source);
  const std::size_t n = source.vertices.size();

  MeshOptimizeResult result;
  result.displacement = DisplacementField::zeros(n);
  result.run.budget = options.budget;
  result.run.seed = options.seed;
  result.run.history.reserve(options.budget);

  AdamState adam(3 * n, options.lr);
  std::vector<double> grad(3 * n);

  for (int iter = 0; iter < options.budget; ++iter) {
    const TriangleMesh deformed = deform(source, result.displacement);
    std::vector<Vec3> vgrad(n);
    IterationRecord rec;
    rec.iter = iter;

    for (const ShadowConfiguration& view : views) {
      const Image rendered = soft_silhouette(deformed, view.camera, rs);
      const ImageLoss il = image_loss(rendered, view.target.image, weights);
      rec.l_img += il.value;
      record_view_metrics(rec, rendered, view.target);

      const std::vector<Vec3> g =
          soft_silhouette_backward(deformed, view.camera, rs, il.gradient);
      for (std::size_t i = 0; i < n; ++i) {
        vgrad[i] += g[i] * weights.lambda_img;
      }
    }

    if (weights.lambda_norm != 0.0) {
      const LossResult norm = normal_consistency_loss(deformed, topo);
      rec.l_norm = norm.value;
      for (std::size_t i = 0; i < n; ++i) {
        vgrad[i] += norm.gradients[i] * weights.lambda_norm;
      }
    }
    if (weights.lambda_lap != 0.0) {
      const LossResult lap = laplacian_loss(deformed, topo);
      rec.l_lap = lap.value;
      for (std::size_t i = 0; i < n; ++i) {
        vgrad[i] += lap.gradients[i] * weights.lambda_lap;
      }
    }
    if (weights.lambda_edge != 0.0) {
      const LossResult edge = edge_length_loss(deformed, topo);
      rec.l_edge = edge.value;
      for (std::size_t i = 0; i < n; ++i) {
        vgrad[i] += edge.gradients[i] * weights.lambda_edge;
      }
    }

    rec.l_total =
        total_mesh_loss(rec.l_img, rec.l_norm, rec.l_lap, rec.l_edge, weights);
    result.run.history.push_back(std::move(rec));

    for (std::size_t i = 0; i < n; ++i) {
      grad[3 * i] = vgrad[i].x;
      grad[3 * i + 1] = vgrad[i].y;
      grad[3 * i + 2] = vgrad[i].z;
    }
    std::vector<double> params(3 * n);
    for (std::size_t i = 0; i < n; ++i) {
      params[3 * i] = result.displacement.offsets[i].x;
      params[3 * i + 1] = result.displacement.offsets[i].y;
      params[3 * i + 2] = result.displacement.offsets[i].z;
    }
    adam_step(params, grad, adam);
    check_finite(params, "displacements");
    for (std::size_t i = 0; i < n; ++i) {
      result.displacement.offsets[i] = {params[3 * i], params[3 * i + 1],
                                        params[3 * i + 2]};
    }
  }

  result.mesh = deform(source, result.displacement);
  return result;
}

}  // namespace umbra
