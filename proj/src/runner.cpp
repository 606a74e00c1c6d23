#include <umbra/runner.hpp>

#include <umbra/blocky.hpp>
#include <umbra/grid_io.hpp>
#include <umbra/image_io.hpp>
#include <umbra/marching_cubes.hpp>
#include <umbra/mesh_losses.hpp>
#include <umbra/obj_io.hpp>
#include <umbra/optimize.hpp>
#include <umbra/visual_hull.hpp>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace umbra {

namespace {

namespace fs = std::filesystem;

fs::path prepare_output_dir(const RunConfig& config) {
  if (config.output.empty()) {
    throw std::runtime_error("no output directory given (config or --output)");
  }
  fs::path dir(config.output);
  fs::create_directories(dir);
  return dir;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out.good()) throw std::runtime_error("write failed: " + path.string());
}

// Orange where the target foreground is missing from the render, blue where
// the render exceeds it; matched shadow pixels dark, ground white.
RgbImage inconsistency_overlay(const Image& rendered, const Image& target) {
  RgbImage overlay(rendered.width(), rendered.height());
  for (int y = 0; y < rendered.height(); ++y) {
    for (int x = 0; x < rendered.width(); ++x) {
      const bool r = rendered.at(x, y) >= 0.5;
      const bool t = target.at(x, y) >= 0.5;
      if (t && r) {
        overlay.set(x, y, 40, 40, 40);
      } else if (t && !r) {
        overlay.set(x, y, 255, 140, 0);  // foreground inconsistency
      } else if (!t && r) {
        overlay.set(x, y, 40, 90, 255);  // background inconsistency
      } else {
        overlay.set(x, y, 255, 255, 255);
      }
    }
  }
  return overlay;
}

struct ViewArtifacts {
  MetricReport metrics;
};

ViewArtifacts write_view_artifacts(
    const fs::path& dir, const std::vector<ShadowConfiguration>& views,
    const std::vector<Image>& renders) {
  std::vector<ViewMetrics> per_view;
  for (std::size_t i = 0; i < views.size(); ++i) {
    const ShadowConfiguration& view = views[i];
    const Image& rendered = renders[i];
    write_png_gray(dir / ("shadow_" + view.name + ".png"), rendered);
    write_png_rgb(dir / ("overlay_" + view.name + ".png"),
                  inconsistency_overlay(rendered, view.target.image));
    per_view.push_back({view.name, iou(rendered, view.target.image),
                        dice(rendered, view.target.image)});
  }
  return {MetricReport::from_views(std::move(per_view))};
}

std::string metrics_json_with_nc(const MetricReport& report,
                                 const double* normal_consistency) {
  nlohmann::json j = nlohmann::json::parse(metric_report_json(report));
  if (normal_consistency) j["normal_consistency"] = *normal_consistency;
  return j.dump(2);
}

RenderSettings settings_from_config(const RunConfig& config,
                                    const VoxelGrid& grid) {
  RenderSettings s = default_render_settings(grid);
  if (config.grid.samples_per_ray > 0) {
    s.samples_per_ray = config.grid.samples_per_ray;
  }
  if (config.grid.opacity_scale > 0.0) {
    s.opacity_scale = config.grid.opacity_scale;
  }
  s.step_jitter = config.grid.step_jitter;
  s.jitter_seed = config.seed;
  s.threads = config.threads;
  return s;
}

SoftRasterSettings raster_settings_from_config(const RunConfig& config) {
  SoftRasterSettings s;
  s.sharpness = config.mesh.sharpness;
  s.distance_cutoff = config.mesh.cutoff;
  s.threads = config.threads;
  return s;
}

}  // namespace

RunOutcome run_optimize(const RunConfig& config) {
  const fs::path dir = prepare_output_dir(config);
  const std::vector<ShadowConfiguration> views = load_views(config);

  OptimizeOptions opts;
  opts.budget = config.resolved_budget();
  opts.lr = config.resolved_lr();
  opts.seed = config.seed;
  opts.threads = config.threads;

  RunOutcome outcome;
  outcome.directory = dir.string();

  if (config.pipeline == Pipeline::kVoxel) {
    VoxelGrid init(config.grid.resolution, config.grid.extent,
                   config.grid.init_logit);
    const RenderSettings settings = settings_from_config(config, init);
    auto [grid, run] =
        optimize_voxel(views, std::move(init), settings, config.weights, opts);

    save_grid(grid, (dir / "grid.bin").string());
    write_text(dir / "history.jsonl", history_jsonl(run));

    std::vector<Image> renders;
    for (const ShadowConfiguration& view : views) {
      renders.push_back(render_silhouette(grid, view.camera, settings));
    }
    outcome.metrics = write_view_artifacts(dir, views, renders).metrics;

    const TriangleMesh smooth = extract_isosurface(grid, 0.5);
    const TriangleMesh blocky = extract_blocky_mesh(grid, 0.5);
    write_obj(smooth, (dir / "sculpture.obj").string());
    write_obj(blocky, (dir / "sculpture_blocky.obj").string());
    if (!smooth.empty()) {
      outcome.normal_consistency =
          normal_consistency_metric(smooth, MeshTopology::build(smooth));
      outcome.has_normal_consistency = true;
    }
  } else {
    const TriangleMesh source = icosphere(config.mesh.level, config.mesh.radius);
    const SoftRasterSettings settings = raster_settings_from_config(config);
    MeshOptimizeResult result =
        optimize_mesh(views, source, settings, config.weights, opts);

    write_text(dir / "history.jsonl", history_jsonl(result.run));
    write_obj(result.mesh, (dir / "sculpture.obj").string());

    std::vector<Image> renders;
    for (const ShadowConfiguration& view : views) {
      renders.push_back(soft_silhouette(result.mesh, view.camera, settings));
    }
    outcome.metrics = write_view_artifacts(dir, views, renders).metrics;
    outcome.normal_consistency = normal_consistency_metric(
        result.mesh, MeshTopology::build(result.mesh));
    outcome.has_normal_consistency = true;
  }

  write_text(dir / "metrics.json",
             metrics_json_with_nc(outcome.metrics,
                                  outcome.has_normal_consistency
                                      ? &outcome.normal_consistency
                                      : nullptr));
  write_text(dir / "resolved_config.json", config_json(config));
  return outcome;
}

RunOutcome run_carve(const RunConfig& config) {
  const fs::path dir = prepare_output_dir(config);
  const std::vector<ShadowConfiguration> views = load_views(config);
  for (const ShadowConfiguration& view : views) {
    if (view.target.mode != TargetMode::kBinary) {
      throw std::runtime_error("carving needs binary targets");
    }
  }

  const BinaryOccupancy hull =
      carve_visual_hull(views, config.grid.resolution, config.grid.extent);
  const VoxelGrid grid = grid_from_occupancy(hull);

  RunOutcome outcome;
  outcome.directory = dir.string();
  save_grid(grid, (dir / "grid.bin").string());
  write_obj(extract_blocky_mesh(grid, 0.5), (dir / "hull.obj").string());

  std::vector<Image> renders;
  for (const ShadowConfiguration& view : views) {
    renders.push_back(occupancy_silhouette(hull, view.camera));
  }
  outcome.metrics = write_view_artifacts(dir, views, renders).metrics;
  write_text(dir / "metrics.json",
             metrics_json_with_nc(outcome.metrics, nullptr));
  write_text(dir / "resolved_config.json", config_json(config));
  return outcome;
}

RunOutcome run_render(const RunConfig& config, const std::string& input) {
  const fs::path dir = prepare_output_dir(config);
  const std::vector<ShadowConfiguration> views = load_views(config);

  std::vector<Image> renders;
  if (fs::path(input).extension() == ".obj") {
    const TriangleMesh mesh = read_obj(input);
    const SoftRasterSettings settings = raster_settings_from_config(config);
    for (const ShadowConfiguration& view : views) {
      renders.push_back(soft_silhouette(mesh, view.camera, settings));
    }
  } else {
    const VoxelGrid grid = load_grid(input);
    const RenderSettings settings = settings_from_config(config, grid);
    for (const ShadowConfiguration& view : views) {
      renders.push_back(render_silhouette(grid, view.camera, settings));
    }
  }

  RunOutcome outcome;
  outcome.directory = dir.string();
  outcome.metrics = write_view_artifacts(dir, views, renders).metrics;
  write_text(dir / "metrics.json",
             metrics_json_with_nc(outcome.metrics, nullptr));
  return outcome;
}

MetricReport run_metrics(const std::vector<std::string>& target_paths,
                         const std::vector<std::string>& rendered_paths,
                         double threshold, const std::string& out_json) {
  if (target_paths.size() != rendered_paths.size() || target_paths.empty()) {
    throw std::runtime_error(
        "metrics: need equally many target and rendered images");
  }
  std::vector<ViewMetrics> per_view;
  for (std::size_t i = 0; i < target_paths.size(); ++i) {
    const TargetImage a =
        load_target(target_paths[i], threshold, TargetMode::kBinary, false);
    TargetImage b =
        load_target(rendered_paths[i], threshold, TargetMode::kBinary, false);
    b = resample_target(b, a.width(), a.height());
    per_view.push_back({fs::path(target_paths[i]).stem().string(),
                        iou(a, b), dice(a, b)});
  }
  const MetricReport report = MetricReport::from_views(std::move(per_view));
  if (!out_json.empty()) {
    write_text(out_json, metric_report_json(report));
  }
  return report;
}

void run_export(const std::string& grid_path, double iso,
                const std::string& mode, const std::string& out_obj) {
  const VoxelGrid grid = load_grid(grid_path);
  TriangleMesh mesh;
  if (mode == "smooth") {
    mesh = extract_isosurface(grid, iso);
  } else if (mode == "blocky") {
    mesh = extract_blocky_mesh(grid, iso);
  } else {
    throw std::runtime_error("export mode must be 'smooth' or 'blocky'");
  }
  if (mesh.empty()) {
    throw std::runtime_error("no geometry at iso " + std::to_string(iso));
  }
  write_obj(mesh, out_obj);
}

}  // namespace umbra
