#pragma once

#include <umbra/config.hpp>
#include <umbra/metrics.hpp>

#include <string>
#include <vector>

namespace umbra {

struct RunOutcome {
  MetricReport metrics;
  double normal_consistency = 0.0;
  bool has_normal_consistency = false;
  std::string directory;
};

// Optimizes per the config and writes into the output directory:
// sculpture.obj (voxel runs also sculpture_blocky.obj and grid.bin),
// shadow_<name>.png, overlay_<name>.png (orange: target foreground the
// render misses; blue: rendered shadow outside the target), metrics.json,
// history.jsonl, and resolved_config.json.
RunOutcome run_optimize(const RunConfig& config);

// Visual-hull carve of the same inputs: hull.obj, grid.bin, per-view
// silhouettes and metrics.json.
RunOutcome run_carve(const RunConfig& config);

// Renders an existing .obj (soft rasterizer) or grid file (volume renderer)
// from the config's views.
RunOutcome run_render(const RunConfig& config, const std::string& input);

// Compares two image sets pairwise (binarized at threshold) and writes a
// metric report; images are paired by position and the second set is
// resampled to the first's size.
MetricReport run_metrics(const std::vector<std::string>& target_paths,
                         const std::vector<std::string>& rendered_paths,
                         double threshold, const std::string& out_json);

// grid file -> OBJ at the given iso, mode "smooth" (marching cubes) or
// "blocky" (voxel faces).
void run_export(const std::string& grid_path, double iso,
                const std::string& mode, const std::string& out_obj);

}  // namespace umbra
