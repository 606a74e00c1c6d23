#pragma once

#include <umbra/loss.hpp>
#include <umbra/shadow_config.hpp>
#include <umbra/soft_raster.hpp>
#include <umbra/trimesh.hpp>
#include <umbra/volume_render.hpp>
#include <umbra/voxel_grid.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace umbra {

struct IterationRecord {
  int iter = 0;
  double l_img = 0.0;
  double l_norm = 0.0;
  double l_lap = 0.0;
  double l_edge = 0.0;
  double l_total = 0.0;
  std::vector<double> iou;   // per view, rendered vs target at 0.5
  std::vector<double> dice;
};

struct OptimizationRun {
  int budget = 0;
  std::uint64_t seed = 0;
  std::vector<IterationRecord> history;
};

struct OptimizeOptions {
  int budget = 500;
  double lr = 1e-2;
  std::uint64_t seed = 0;
  int threads = 1;
};

// One JSON object per iteration:
// {"iter":..,"l_img":..,"l_norm":..,"l_lap":..,"l_edge":..,"l_total":..,
//  "iou":[..],"dice":[..]}
std::string history_jsonl(const OptimizationRun& run);

// Full-batch first-order optimization of the voxel logits against the image
// loss summed over views. Losses are recorded before each update, so the
// first record is the initial loss. Deterministic given the seed; with one
// thread the history is bit-reproducible.
std::pair<VoxelGrid, OptimizationRun> optimize_voxel(
    const std::vector<ShadowConfiguration>& views, VoxelGrid grid,
    const RenderSettings& settings, const LossWeights& weights,
    const OptimizeOptions& options);

struct MeshOptimizeResult {
  TriangleMesh mesh;  // deformed source
  DisplacementField displacement;
  OptimizationRun run;
};

// Learns per-vertex displacements of the source mesh minimizing the
// weighted sum of image, normal-consistency, Laplacian, and edge-length
// losses. Set a weight to 0 to drop a term.
MeshOptimizeResult optimize_mesh(const std::vector<ShadowConfiguration>& views,
                                 const TriangleMesh& source,
                                 const SoftRasterSettings& settings,
                                 const LossWeights& weights,
                                 const OptimizeOptions& options);

}  // namespace umbra
