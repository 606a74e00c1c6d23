#include <umbra/config.hpp>
#include <umbra/metrics.hpp>
#include <umbra/runner.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

namespace {

struct CommonFlags {
  std::string config_path;
  std::string output;
  int threads = 0;
  long long seed = -1;
  std::string pipeline;
};

void add_common(CLI::App* cmd, CommonFlags* flags, bool needs_config = true) {
  auto* opt = cmd->add_option("--config", flags->config_path,
                              "run configuration (JSON)");
  if (needs_config) opt->required()->check(CLI::ExistingFile);
  cmd->add_option("--output", flags->output, "output directory");
  cmd->add_option("--threads", flags->threads, "worker threads (0 = all cores)")
      ->envname("UMBRA_THREADS");
  cmd->add_option("--seed", flags->seed, "RNG seed override");
  cmd->add_option("--pipeline", flags->pipeline, "voxel or mesh")
      ->check(CLI::IsMember({"voxel", "mesh"}));
}

umbra::RunConfig load(const CommonFlags& flags) {
  umbra::RunConfig config = umbra::parse_config(flags.config_path);
  if (!flags.output.empty()) config.output = flags.output;
  if (flags.threads != 0) config.threads = flags.threads;
  if (flags.seed >= 0) config.seed = static_cast<std::uint64_t>(flags.seed);
  if (flags.pipeline == "voxel") config.pipeline = umbra::Pipeline::kVoxel;
  if (flags.pipeline == "mesh") config.pipeline = umbra::Pipeline::kMesh;
  return config;
}

void print_outcome(const umbra::RunOutcome& outcome) {
  std::printf("outputs written to %s\n", outcome.directory.c_str());
  for (const umbra::ViewMetrics& v : outcome.metrics.views) {
    std::printf("  %-16s iou %.4f  dice %.4f\n", v.name.c_str(), v.iou,
                v.dice);
  }
  std::printf("  mean iou %.4f  mean dice %.4f\n", outcome.metrics.mean_iou,
              outcome.metrics.mean_dice);
  if (outcome.has_normal_consistency) {
    std::printf("  normal consistency %.4f\n", outcome.normal_consistency);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"umbra: shadow-art sculptures via differentiable rendering"};
  app.require_subcommand(1);

  CommonFlags optimize_flags;
  auto* optimize = app.add_subcommand(
      "optimize", "optimize a sculpture against the configured shadows");
  add_common(optimize, &optimize_flags);

  CommonFlags carve_flags;
  auto* carve = app.add_subcommand(
      "carve", "space-carve the visual hull of the configured shadows");
  add_common(carve, &carve_flags);

  CommonFlags render_flags;
  std::string render_input;
  auto* render = app.add_subcommand(
      "render", "render an existing OBJ or grid from the configured views");
  add_common(render, &render_flags);
  render->add_option("--input", render_input, "sculpture .obj or grid file")
      ->required()
      ->check(CLI::ExistingFile);

  std::vector<std::string> metric_targets;
  std::vector<std::string> metric_renders;
  double metric_threshold = 0.5;
  std::string metric_out;
  auto* metrics =
      app.add_subcommand("metrics", "IoU/Dice between two image sets");
  metrics->add_option("--targets", metric_targets, "target images")
      ->required()
      ->check(CLI::ExistingFile);
  metrics->add_option("--renders", metric_renders, "rendered images")
      ->required()
      ->check(CLI::ExistingFile);
  metrics->add_option("--threshold", metric_threshold, "binarize threshold");
  metrics->add_option("--out", metric_out, "write the report here");

  std::string export_grid;
  std::string export_mode = "smooth";
  std::string export_out;
  double export_iso = 0.5;
  auto* exporter = app.add_subcommand("export", "grid file -> OBJ mesh");
  exporter->add_option("--grid", export_grid, "grid file")
      ->required()
      ->check(CLI::ExistingFile);
  exporter->add_option("--iso", export_iso, "density iso level");
  exporter->add_option("--mode", export_mode, "smooth or blocky")
      ->check(CLI::IsMember({"smooth", "blocky"}));
  exporter->add_option("--out", export_out, "output OBJ path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (optimize->parsed()) {
      print_outcome(umbra::run_optimize(load(optimize_flags)));
    } else if (carve->parsed()) {
      print_outcome(umbra::run_carve(load(carve_flags)));
    } else if (render->parsed()) {
      print_outcome(umbra::run_render(load(render_flags), render_input));
    } else if (metrics->parsed()) {
      const umbra::MetricReport report = umbra::run_metrics(
          metric_targets, metric_renders, metric_threshold, metric_out);
      std::printf("%s\n", umbra::metric_report_json(report).c_str());
    } else if (exporter->parsed()) {
      umbra::run_export(export_grid, export_iso, export_mode, export_out);
      std::printf("wrote %s\n", export_out.c_str());
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
