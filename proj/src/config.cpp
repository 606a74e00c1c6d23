#include <umbra/config.hpp>

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>

namespace umbra {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) {
  throw std::runtime_error("config error: " + what);
}

void expect_keys(const json& obj, const std::string& where,
                 const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) {
      fail("unknown key '" + key + "' in " + where);
    }
  }
}

template <typename T>
T get_or(const json& obj, const std::string& key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    fail("field '" + key + "' has the wrong type");
  }
}

constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

ViewSpec parse_view(const json& v, int index,
                    const std::filesystem::path& base) {
  const std::string where = "views[" + std::to_string(index) + "]";
  if (!v.is_object()) fail(where + " must be an object");
  expect_keys(v, where,
              {"name", "image", "azimuth", "elevation", "azimuth_deg",
               "elevation_deg", "distance", "projection", "fov_or_extent",
               "invert", "threshold", "mode"});

  ViewSpec spec;
  if (!v.contains("image")) fail(where + " is missing 'image'");
  spec.image = (base / v.at("image").get<std::string>()).string();
  if (!std::filesystem::exists(spec.image)) {
    fail(where + ": image file not found: " + spec.image);
  }
  spec.name =
      get_or<std::string>(v, "name",
                          std::filesystem::path(spec.image).stem().string());

  if (v.contains("azimuth") && v.contains("azimuth_deg")) {
    fail(where + ": give azimuth either in radians or degrees, not both");
  }
  if (v.contains("elevation") && v.contains("elevation_deg")) {
    fail(where + ": give elevation either in radians or degrees, not both");
  }
  spec.azimuth = v.contains("azimuth")
                     ? v.at("azimuth").get<double>()
                     : get_or<double>(v, "azimuth_deg", 0.0) * kDegToRad;
  spec.elevation = v.contains("elevation")
                       ? v.at("elevation").get<double>()
                       : get_or<double>(v, "elevation_deg", 0.0) * kDegToRad;

  spec.distance = get_or<double>(v, "distance", 3.0);
  if (!(spec.distance > 0.0)) fail(where + ": distance must be positive");

  const std::string proj = get_or<std::string>(v, "projection", "orthographic");
  if (proj == "orthographic") {
    spec.projection = Projection::kOrthographic;
  } else if (proj == "perspective") {
    spec.projection = Projection::kPerspective;
  } else {
    fail(where + ": projection must be 'orthographic' or 'perspective'");
  }

  spec.fov_or_extent = get_or<double>(v, "fov_or_extent", 0.0);
  spec.invert = get_or<bool>(v, "invert", false);
  spec.threshold = get_or<double>(v, "threshold", 0.5);
  if (!(spec.threshold > 0.0 && spec.threshold < 1.0)) {
    fail(where + ": threshold must be in (0, 1)");
  }

  const std::string mode = get_or<std::string>(v, "mode", "binary");
  if (mode == "binary") {
    spec.mode = TargetMode::kBinary;
  } else if (mode == "grayscale") {
    spec.mode = TargetMode::kGrayscale;
  } else {
    fail(where + ": mode must be 'binary' or 'grayscale'");
  }
  return spec;
}

}  // namespace

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config file: " + path);

  json root;
  try {
    root = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(std::string("invalid JSON in ") + path + ": " + e.what());
  }
  if (!root.is_object()) fail("top level must be an object");
  expect_keys(root, "config",
              {"pipeline", "views", "grid", "mesh", "weights", "budget", "lr",
               "seed", "threads", "render", "output"});

  RunConfig config;
  const std::string pipeline = get_or<std::string>(root, "pipeline", "voxel");
  if (pipeline == "voxel") {
    config.pipeline = Pipeline::kVoxel;
  } else if (pipeline == "mesh") {
    config.pipeline = Pipeline::kMesh;
  } else {
    fail("pipeline must be 'voxel' or 'mesh'");
  }

  if (!root.contains("views") || !root.at("views").is_array() ||
      root.at("views").empty()) {
    fail("'views' must be a non-empty array");
  }
  const std::filesystem::path base =
      std::filesystem::absolute(path).parent_path();
  int index = 0;
  for (const json& v : root.at("views")) {
    config.views.push_back(parse_view(v, index++, base));
  }
  // keep artifact names (shadow_<name>.png, ...) distinct
  std::set<std::string> seen;
  for (ViewSpec& v : config.views) {
    std::string name = v.name;
    int suffix = 1;
    while (seen.count(name)) {
      name = v.name + "_" + std::to_string(++suffix);
    }
    v.name = name;
    seen.insert(name);
  }

  if (root.contains("grid")) {
    const json& g = root.at("grid");
    expect_keys(g, "grid",
                {"resolution", "extent", "init_logit", "opacity_scale",
                 "samples_per_ray", "step_jitter"});
    config.grid.resolution = get_or<int>(g, "resolution", 128);
    config.grid.extent = get_or<double>(g, "extent", 1.7);
    config.grid.init_logit = get_or<double>(g, "init_logit", 1.0);
    config.grid.opacity_scale = get_or<double>(g, "opacity_scale", 0.0);
    config.grid.samples_per_ray = get_or<int>(g, "samples_per_ray", 0);
    config.grid.step_jitter = get_or<bool>(g, "step_jitter", false);
    if (config.grid.resolution < 2) fail("grid.resolution must be >= 2");
    if (!(config.grid.extent > 0.0)) fail("grid.extent must be positive");
  }

  if (root.contains("mesh")) {
    const json& m = root.at("mesh");
    expect_keys(m, "mesh", {"level", "radius", "sharpness", "cutoff"});
    config.mesh.level = get_or<int>(m, "level", 4);
    config.mesh.radius = get_or<double>(m, "radius", 0.6);
    config.mesh.sharpness = get_or<double>(m, "sharpness", 1e-4);
    config.mesh.cutoff = get_or<double>(m, "cutoff", 0.05);
    if (config.mesh.level < 0) fail("mesh.level must be >= 0");
    if (!(config.mesh.radius > 0.0)) fail("mesh.radius must be positive");
    if (!(config.mesh.sharpness > 0.0)) fail("mesh.sharpness must be positive");
    if (!(config.mesh.cutoff > 0.0)) fail("mesh.cutoff must be positive");
  }

  if (root.contains("weights")) {
    const json& w = root.at("weights");
    expect_keys(w, "weights",
                {"lambda_l1", "lambda_l2", "lambda_img", "lambda_norm",
                 "lambda_lap", "lambda_edge"});
    config.weights.lambda_l1 = get_or<double>(w, "lambda_l1", 10.0);
    config.weights.lambda_l2 = get_or<double>(w, "lambda_l2", 10.0);
    config.weights.lambda_img = get_or<double>(w, "lambda_img", 1.6);
    config.weights.lambda_norm = get_or<double>(w, "lambda_norm", 2.1);
    config.weights.lambda_lap = get_or<double>(w, "lambda_lap", 0.9);
    config.weights.lambda_edge = get_or<double>(w, "lambda_edge", 1.8);
    const double all[] = {config.weights.lambda_l1, config.weights.lambda_l2,
                          config.weights.lambda_img, config.weights.lambda_norm,
                          config.weights.lambda_lap,
                          config.weights.lambda_edge};
    for (const double x : all) {
      if (x < 0.0 || !std::isfinite(x)) fail("loss weights must be >= 0");
    }
  }

  if (root.contains("render")) {
    const json& r = root.at("render");
    expect_keys(r, "render", {"width", "height"});
    config.width = get_or<int>(r, "width", 128);
    config.height = get_or<int>(r, "height", 128);
    if (config.width < 1 || config.height < 1) {
      fail("render dimensions must be >= 1");
    }
  }

  config.budget = get_or<int>(root, "budget", 0);
  if (config.budget < 0) fail("budget must be >= 0");
  config.lr = get_or<double>(root, "lr", 0.0);
  if (config.lr < 0.0) fail("lr must be >= 0");
  config.seed = get_or<std::uint64_t>(root, "seed", 0);
  config.threads = get_or<int>(root, "threads", 1);
  config.output = get_or<std::string>(root, "output", "");
  return config;
}

std::string config_json(const RunConfig& config) {
  json views = json::array();
  for (const ViewSpec& v : config.views) {
    views.push_back({{"name", v.name},
                     {"image", v.image},
                     {"azimuth", v.azimuth},
                     {"elevation", v.elevation},
                     {"distance", v.distance},
                     {"projection", v.projection == Projection::kOrthographic
                                        ? "orthographic"
                                        : "perspective"},
                     {"fov_or_extent", config.resolved_fov_or_extent(v)},
                     {"invert", v.invert},
                     {"threshold", v.threshold},
                     {"mode", v.mode == TargetMode::kBinary ? "binary"
                                                            : "grayscale"}});
  }
  json j{
      {"pipeline", config.pipeline == Pipeline::kVoxel ? "voxel" : "mesh"},
      {"views", views},
      {"grid",
       {{"resolution", config.grid.resolution},
        {"extent", config.grid.extent},
        {"init_logit", config.grid.init_logit},
        {"opacity_scale", config.grid.opacity_scale > 0.0
                              ? config.grid.opacity_scale
                              : 30.0 / config.grid.extent},
        {"samples_per_ray", config.grid.samples_per_ray > 0
                                ? config.grid.samples_per_ray
                                : 2 * config.grid.resolution},
        {"step_jitter", config.grid.step_jitter}}},
      {"mesh",
       {{"level", config.mesh.level},
        {"radius", config.mesh.radius},
        {"sharpness", config.mesh.sharpness},
        {"cutoff", config.mesh.cutoff}}},
      {"weights",
       {{"lambda_l1", config.weights.lambda_l1},
        {"lambda_l2", config.weights.lambda_l2},
        {"lambda_img", config.weights.lambda_img},
        {"lambda_norm", config.weights.lambda_norm},
        {"lambda_lap", config.weights.lambda_lap},
        {"lambda_edge", config.weights.lambda_edge}}},
      {"budget", config.resolved_budget()},
      {"lr", config.resolved_lr()},
      {"seed", config.seed},
      {"threads", config.threads},
      {"render", {{"width", config.width}, {"height", config.height}}},
      {"output", config.output}};
  return j.dump(2);
}

std::vector<ShadowConfiguration> load_views(const RunConfig& config) {
  std::vector<ShadowConfiguration> views;
  views.reserve(config.views.size());
  for (const ViewSpec& spec : config.views) {
    TargetImage target = resample_target(
        load_target(spec.image, spec.threshold, spec.mode, spec.invert),
        config.width, config.height);
    Camera camera = camera_from_view_spec(
        spec.azimuth, spec.elevation, spec.distance, spec.projection,
        config.resolved_fov_or_extent(spec), config.width, config.height);
    views.push_back({spec.name, std::move(target), std::move(camera)});
  }
  return views;
}

}  // namespace umbra
