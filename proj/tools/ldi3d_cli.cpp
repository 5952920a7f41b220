// ldi3d command-line driver.
#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>

#include "ldi3d/build.hpp"
#include "ldi3d/gltf.hpp"
#include "ldi3d/image_io.hpp"
#include "ldi3d/ldi_io.hpp"
#include "ldi3d/metrics.hpp"
#include "ldi3d/render.hpp"
#include "ldi3d/synthetic.hpp"
#include "ldi3d/trajectory.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace ldi3d;

namespace {

enum Exit { kOk = 0, kFailure = 1, kInput = 2, kConfig = 3, kInternal = 4 };

PipelineConfig resolve_config(const std::string& flag) {
  std::string path = flag;
  if (path.empty())
    if (const char* env = std::getenv("LDI3D_CONFIG")) path = env;
  return path.empty() ? PipelineConfig{} : load_config(path);
}

Plane<float> read_depth_image(const fs::path& path) {
  if (path.extension() == ".pfm") {
    PfmImage p = read_pfm(path);
    if (p.channels != 1) throw InputError("depth PFM must have one channel");
    return pfm_to_plane(p);
  }
  Plane<std::uint16_t> raw = read_png_gray16(path);
  Plane<float> out(raw.width, raw.height);
  for (std::size_t i = 0; i < raw.size(); ++i) out.data[i] = raw.data[i];
  return out;
}

Plane<std::uint16_t> to_gray16(const DisparityMap& d) {
  Plane<std::uint16_t> out(d.width, d.height);
  for (std::size_t i = 0; i < d.size(); ++i)
    out.data[i] = static_cast<std::uint16_t>(std::lround(std::clamp(d.data[i], 0.f, 1.f) * 65535.f));
  return out;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream f(path);
  f << j.dump(2) << "\n";
  if (!f) throw InputError("cannot write " + path.string());
}

/// Lists every regular file in the run directory except the manifest itself.
void write_manifest(const fs::path& dir, const std::string& command) {
  json files = json::array();
  std::vector<fs::path> paths;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file() && e.path().filename() != "manifest.json") paths.push_back(e.path());
  std::sort(paths.begin(), paths.end());
  for (const auto& p : paths) {
    auto bytes = read_file_bytes(p);
    std::uint64_t h = 1469598103934665603ull;
    for (auto b : bytes) h = (h ^ b) * 1099511628211ull;
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
    files.push_back({{"path", fs::relative(p, dir).generic_string()}, {"bytes", bytes.size()}, {"fnv1a64", hex}});
  }
  write_json(dir / "manifest.json", {{"tool", "ldi3d"}, {"command", command}, {"files", files}});
}

json report_json(const BuildResult& b, const TexturedMesh& mesh, double mesh_seconds, double export_seconds) {
  const RunReport& r = b.report;
  return {{"edges", r.input_edges},
          {"recursion_levels", r.levels},
          {"edges_per_level", r.edges_per_level},
          {"edges_processed", r.edges_processed},
          {"edges_created", r.edges_created},
          {"synthesized_pixels", r.synthesized_pixels},
          {"context_pixels", r.context_pixels},
          {"ldi_pixels", b.ldi.pixel_count()},
          {"mesh", {{"vertices", mesh.vertices.size()}, {"triangles", mesh.triangles.size()}}},
          {"timings",
           {{"preprocess", b.preprocess_seconds},
            {"cut", r.seconds.cut},
            {"regions", r.seconds.regions},
            {"flatten", r.seconds.flatten},
            {"inpaint", r.seconds.inpaint},
            {"merge", r.seconds.merge},
            {"mesh", mesh_seconds},
            {"export", export_seconds}}},
          {"warnings", r.warnings}};
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct BuildArgs {
  std::string color, depth, config, out = "run";
  bool obj = false;
};

int cmd_build(const BuildArgs& a) {
  PipelineConfig cfg = resolve_config(a.config);
  RgbImage color = read_png_rgb(a.color);
  Plane<float> depth = read_depth_image(a.depth);
  fs::create_directories(a.out);
  auto backend = make_backend(cfg, fs::path(a.out) / "backend");
  BuildResult b = build_ldi(color, depth, cfg, *backend);
  auto t0 = std::chrono::steady_clock::now();
  TexturedMesh mesh = ldi_to_mesh(b.ldi, cfg.camera_for(color.width, color.height), cfg.depth);
  double mesh_s = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  write_ldi(fs::path(a.out) / "scene.ldi", b.ldi);
  write_glb(fs::path(a.out) / "mesh.glb", mesh);
  if (a.obj) write_obj(fs::path(a.out) / "mesh.obj", mesh);
  write_png_gray16(fs::path(a.out) / "disparity.png", to_gray16(b.disparity));
  double export_s = seconds_since(t0);
  {
    std::ofstream f(fs::path(a.out) / "config.txt");
    f << config_to_text(cfg);
  }
  json report = report_json(b, mesh, mesh_s, export_s);
  write_json(fs::path(a.out) / "report.json", report);
  write_manifest(a.out, "build");
  for (const auto& w : b.report.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << "edges " << b.report.input_edges << ", levels " << b.report.levels << ", synthesized "
            << b.report.synthesized_pixels << ", triangles " << mesh.triangles.size() << "\n";
  return kOk;
}

struct RenderArgs {
  std::string input, trajectory, config, out = "frames";
};

int cmd_render(const RenderArgs& a) {
  PipelineConfig cfg = resolve_config(a.config);
  std::ifstream tf(a.trajectory);
  if (!tf) throw InputError("cannot read trajectory " + a.trajectory);
  std::stringstream ss;
  ss << tf.rdbuf();
  Trajectory traj = parse_trajectory(ss.str());
  TexturedMesh mesh;
  if (fs::path(a.input).extension() == ".ldi") {
    Ldi ldi = read_ldi(a.input);
    mesh = ldi_to_mesh(ldi, cfg.camera_for(ldi.width(), ldi.height()), cfg.depth);
  } else {
    mesh = read_glb(a.input);
  }
  fs::create_directories(a.out);
  auto frames = render_trajectory(mesh, traj);
  json stats = json::array();
  for (std::size_t i = 0; i < frames.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%04zu.png", i);
    write_png_rgb(fs::path(a.out) / name, frames[i].color);
    stats.push_back({{"file", name}, {"holes", count_holes(frames[i].coverage, 0)}});
  }
  write_json(fs::path(a.out) / "frames.json", {{"frames", stats}});
  write_manifest(a.out, "render");
  std::cout << frames.size() << " frame(s)\n";
  return kOk;
}

struct CompareArgs {
  std::string color, depth, scene, config, out = "compare";
  std::vector<double> shifts{2, 4, 6, 8, 10};
  int size = 128;
};

Scene scene_by_name(const std::string& name, int size) {
  if (name == "two_layer") return two_layer_scene(size, size);
  if (name == "nested") return nested_scene(size, size);
  throw ConfigError("unknown scene '" + name + "' (two_layer, nested)");
}

int cmd_compare(const CompareArgs& a) {
  PipelineConfig cfg = resolve_config(a.config);
  RgbImage color;
  Plane<float> depth;
  if (!a.scene.empty()) {
    Scene s = scene_by_name(a.scene, a.size);
    color = s.color;
    depth = s.disparity;
    cfg.depth_mode = DepthMode::Disparity;
  } else {
    if (a.color.empty() || a.depth.empty()) throw ConfigError("compare needs --scene or --color and --depth");
    color = read_png_rgb(a.color);
    depth = read_depth_image(a.depth);
  }
  fs::create_directories(a.out);
  auto backend = make_backend(cfg, fs::path(a.out) / "backend");
  BuildResult b = build_ldi(color, depth, cfg, *backend);
  const Camera cam = cfg.camera_for(color.width, color.height);
  TexturedMesh mesh = ldi_to_mesh(b.ldi, cam, cfg.depth);
  float dmax = 0;
  for (float v : b.disparity.data) dmax = std::max(dmax, v);
  const double z_near = cfg.depth.depth(dmax);
  double max_shift = 0;
  for (double s : a.shifts) max_shift = std::max(max_shift, std::abs(s));
  const int border = static_cast<int>(std::ceil(max_shift)) + 2;

  json rows = json::array();
  for (std::size_t i = 0; i < a.shifts.size(); ++i) {
    const double t = a.shifts[i] * z_near / cam.fx;
    const Camera dst = cam.translated({t, 0, 0});
    WarpResult naive = naive_warp(color, b.disparity, cam, dst, cfg.depth);
    RenderResult full = render_view(mesh, dst, color.width, color.height);
    RgbImage side(2 * color.width, color.height);
    for (int y = 0; y < color.height; ++y)
      for (int x = 0; x < color.width; ++x) {
        side.at(x, y) = naive.color.at(x, y);
        side.at(color.width + x, y) = full.color.at(x, y);
      }
    char name[32];
    std::snprintf(name, sizeof name, "compare_%02zu.png", i);
    write_png_rgb(fs::path(a.out) / name, side);
    rows.push_back({{"shift_px", a.shifts[i]},
                    {"translation", t},
                    {"naive_holes", count_holes(invert(naive.holes), border)},
                    {"pipeline_holes", count_holes(full.coverage, border)},
                    {"file", name}});
  }
  json report = {{"width", color.width},
                 {"height", color.height},
                 {"border", border},
                 {"edges", b.report.input_edges},
                 {"recursion_levels", b.report.levels},
                 {"views", rows}};
  write_json(fs::path(a.out) / "compare.json", report);
  write_manifest(a.out, "compare");
  std::cout << report.dump(2) << "\n";
  return kOk;
}

struct MetricsArgs {
  std::string a, b, synthesis, context;
};

int cmd_metrics(const MetricsArgs& m) {
  RgbImage a = read_png_rgb(m.a), b = read_png_rgb(m.b);
  json j;
  const double p = psnr(a, b);
  j["psnr"] = std::isinf(p) ? json("inf") : json(p);
  if (a.width >= 11 && a.height >= 11) j["ssim"] = ssim(a, b);
  auto load_mask = [&](const std::string& path) {
    RgbImage img = read_png_rgb(path);
    Mask mk(img.width, img.height);
    for (std::size_t i = 0; i < img.size(); ++i) mk.data[i] = img.data[i].r > 127 ? 1 : 0;
    return mk;
  };
  if (!m.synthesis.empty()) {
    Mask s = load_mask(m.synthesis);
    Mask c = m.context.empty() ? invert(s) : load_mask(m.context);
    Tensor3 ta = to_tensor(a), tb = to_tensor(b);
    ReconLosses r = masked_recon_losses(ta, tb, s, c);
    j["l_synthesis"] = r.synthesis;
    j["l_context"] = r.context;
    j["l_tv"] = tv_loss(ta, s);
  }
  std::cout << j.dump(2) << "\n";
  return kOk;
}

struct SynthArgs {
  std::string scene = "two_layer", out = "scene";
  int size = 128;
  std::uint64_t seed = 1;
};

int cmd_synth(const SynthArgs& a) {
  Scene s = a.scene == "random" ? random_scene(a.seed, a.size, a.size) : scene_by_name(a.scene, a.size);
  fs::create_directories(a.out);
  write_png_rgb(fs::path(a.out) / "color.png", s.color);
  write_png_gray16(fs::path(a.out) / "depth.png", to_gray16(s.disparity));
  std::cout << (fs::path(a.out) / "color.png").string() << " " << (fs::path(a.out) / "depth.png").string() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ldi3d: layered depth image inpainting for 3D photos"};
  app.require_subcommand(1);
  const std::string config_help = "key = value config file (default: $LDI3D_CONFIG)";

  BuildArgs build;
  auto* b = app.add_subcommand("build", "RGB-D image -> inpainted LDI, glb mesh and run report");
  b->add_option("--color", build.color, "color PNG")->required();
  b->add_option("--depth", build.depth, "disparity (or depth, see depth_mode) as gray PNG or PFM")->required();
  b->add_option("--config", build.config, config_help);
  b->add_option("-o,--out", build.out, "run directory")->capture_default_str();
  b->add_flag("--obj", build.obj, "also write mesh.obj");

  RenderArgs render;
  auto* r = app.add_subcommand("render", "render a camera trajectory from a glb or LDI");
  r->add_option("--input", render.input, "mesh.glb or scene.ldi")->required();
  r->add_option("--trajectory", render.trajectory, "trajectory JSON")->required();
  r->add_option("--config", render.config, config_help + "; used for .ldi inputs");
  r->add_option("-o,--out", render.out, "frame directory")->capture_default_str();

  CompareArgs compare;
  auto* c = app.add_subcommand("compare", "naive warp vs. layered pipeline, with hole statistics");
  c->add_option("--scene", compare.scene, "built-in scene: two_layer, nested");
  c->add_option("--size", compare.size, "built-in scene size")->capture_default_str();
  c->add_option("--color", compare.color, "color PNG");
  c->add_option("--depth", compare.depth, "depth PNG or PFM");
  c->add_option("--shift", compare.shifts, "lateral parallax of the nearest surface, in pixels")->capture_default_str();
  c->add_option("--config", compare.config, config_help);
  c->add_option("-o,--out", compare.out, "output directory")->capture_default_str();

  MetricsArgs metrics;
  auto* m = app.add_subcommand("metrics", "PSNR/SSIM (and masked losses) between two images, as JSON");
  m->add_option("a", metrics.a, "image")->required();
  m->add_option("b", metrics.b, "reference image")->required();
  m->add_option("--synthesis-mask", metrics.synthesis, "mask PNG (white = synthesis)");
  m->add_option("--context-mask", metrics.context, "mask PNG (default: complement of synthesis)");

  SynthArgs synth;
  auto* s = app.add_subcommand("synth", "write a synthetic RGB-D scene");
  s->add_option("--scene", synth.scene, "two_layer, nested or random")->capture_default_str();
  s->add_option("--size", synth.size, "image side")->capture_default_str();
  s->add_option("--seed", synth.seed, "seed for random scenes")->capture_default_str();
  s->add_option("-o,--out", synth.out, "output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (*b) return cmd_build(build);
    if (*r) return cmd_render(render);
    if (*c) return cmd_compare(compare);
    if (*m) return cmd_metrics(metrics);
    if (*s) return cmd_synth(synth);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const ConsistencyError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const BackendError& e) {
    std::cerr << "backend error: " << e.what() << "\n";
    return kFailure;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
