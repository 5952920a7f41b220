#include <gtest/gtest.h>
#include <sys/wait.h>

#include <fstream>
#include <nlohmann/json.hpp>

#include "ldi3d/config.hpp"
#include "ldi3d/gltf.hpp"
#include "ldi3d/image_io.hpp"
#include "ldi3d/ldi_io.hpp"
#include "test_util.hpp"

using namespace ldi3d;
namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args, const fs::path& log) {
  std::string cmd = std::string(LDI3D_CLI_PATH) + " " + args + " > '" + log.string() + "' 2>&1";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

nlohmann::json read_json(const fs::path& p) {
  std::ifstream in(p);
  return nlohmann::json::parse(in);
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

// Outside the band where dilated background pixels are re-synthesized
// around the 24 px square of the 64 px two-layer scene.
bool away_from_square(int x, int y) {
  auto out = [](int v) { return v < 20 - 6 || v > 43 + 6; };
  return out(x) || out(y);
}

bool close_colors(const Rgb8& a, const Rgb8& b) {
  return std::abs(a.r - b.r) <= 1 && std::abs(a.g - b.g) <= 1 && std::abs(a.b - b.b) <= 1;
}

}  // namespace

TEST(Config, DefaultsAreValid) {
  PipelineConfig c;
  c.validate();
  EXPECT_EQ(c.filter.window, 7);
  EXPECT_EQ(c.filter.sigma_spatial, 4.0);
  EXPECT_EQ(c.filter.sigma_intensity, 0.5);
  EXPECT_EQ(c.regions.n_syn, 40);
  EXPECT_EQ(c.regions.n_ctx, 100);
  EXPECT_EQ(c.min_edge_length, 10);
}

TEST(Config, ParsesKeysAndComments) {
  auto c = parse_config(R"(
# tuned for small images
threshold = 0.05
filter_window = 5   # smaller window
n_syn = 12
n_ctx = 30
dilate = 0
depth_mode = depth
backend = diffusion
seed = 42
fx = 100
)");
  EXPECT_FLOAT_EQ(c.threshold, 0.05f);
  EXPECT_EQ(c.filter.window, 5);
  EXPECT_EQ(c.regions.n_syn, 12);
  EXPECT_EQ(c.regions.n_ctx, 30);
  EXPECT_EQ(c.regions.dilate, 0);
  EXPECT_EQ(c.depth_mode, DepthMode::Depth);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.camera_for(64, 32).fx, 100);
  EXPECT_EQ(c.camera_for(64, 32).cx, 31.5);
}

TEST(Config, TextRoundTrip) {
  auto c = parse_config("threshold = 0.07\nn_ctx = 9\nscale_to_image = true\n");
  auto again = parse_config(config_to_text(c));
  EXPECT_EQ(config_to_text(again), config_to_text(c));
  EXPECT_TRUE(again.scale_to_image);
  EXPECT_EQ(again.edge_length_for(512, 256), 5);
  EXPECT_EQ(again.regions_for(512, 256).n_ctx, 5);
}

TEST(Config, Errors) {
  EXPECT_THROW(parse_config("bogus = 1"), ConfigError);
  EXPECT_THROW(parse_config("threshold"), ConfigError);
  EXPECT_THROW(parse_config("filter_window = 4"), ConfigError);
  EXPECT_THROW(parse_config("threshold = -1"), ConfigError);
  EXPECT_THROW(parse_config("n_syn = abc"), ConfigError);
  EXPECT_THROW(parse_config("backend = external"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/ldi3d.cfg"), ConfigError);
}

TEST(Cli, HelpAndUsageErrors) {
  auto dir = testutil::scratch_dir("cli_usage");
  EXPECT_EQ(run_cli("--help", dir / "log"), 0);
  EXPECT_EQ(run_cli("", dir / "log"), 3);
  EXPECT_EQ(run_cli("build --color x.png", dir / "log"), 3);
  EXPECT_EQ(run_cli("frobnicate", dir / "log"), 3);
}

TEST(Cli, CorruptInputIsReported) {
  auto dir = testutil::scratch_dir("cli_corrupt");
  std::ofstream(dir / "bad.png") << "not a png";
  EXPECT_EQ(run_cli("build --color " + q(dir / "bad.png") + " --depth " + q(dir / "bad.png") + " -o " + q(dir / "out"),
                    dir / "log"),
            2);
  std::ifstream log(dir / "log");
  std::string text((std::istreambuf_iterator<char>(log)), std::istreambuf_iterator<char>());
  EXPECT_NE(text.find("input error"), std::string::npos);
  std::ofstream(dir / "bad.cfg") << "nope = 1\n";
  EXPECT_EQ(run_cli("synth -o " + q(dir / "s") + " --size 16", dir / "log"), 0);
  EXPECT_EQ(run_cli("build --color " + q(dir / "s/color.png") + " --depth " + q(dir / "s/depth.png") + " --config " +
                        q(dir / "bad.cfg") + " -o " + q(dir / "out"),
                    dir / "log"),
            3);
}

TEST(Cli, BuildRenderRoundTrip) {
  auto dir = testutil::scratch_dir("cli_build");
  ASSERT_EQ(run_cli("synth --scene two_layer --size 64 -o " + q(dir / "scene"), dir / "log"), 0);
  ASSERT_EQ(run_cli("build --color " + q(dir / "scene/color.png") + " --depth " + q(dir / "scene/depth.png") +
                        " --obj -o " + q(dir / "run"),
                    dir / "log"),
            0);
  for (auto f : {"scene.ldi", "mesh.glb", "mesh.obj", "report.json", "manifest.json", "config.txt", "disparity.png"})
    EXPECT_TRUE(fs::exists(dir / "run" / f)) << f;
  auto report = read_json(dir / "run/report.json");
  EXPECT_EQ(report["edges"].get<int>(), 1);
  EXPECT_EQ(report["recursion_levels"].get<int>(), 1);
  Ldi ldi = read_ldi(dir / "run/scene.ldi");
  ldi.validate();
  EXPECT_GT(ldi.pixel_count(), 64u * 64u);
  EXPECT_EQ(read_glb(dir / "run/mesh.glb").vertices.size(), ldi.pixel_count());

  std::ofstream(dir / "traj.json") << R"({"type": "lateral", "frames": 3, "amplitude": 0.02, "width": 64, "height": 64})";
  ASSERT_EQ(run_cli("render --input " + q(dir / "run/mesh.glb") + " --trajectory " + q(dir / "traj.json") + " -o " +
                        q(dir / "frames"),
                    dir / "log"),
            0);
  for (auto f : {"frame_0000.png", "frame_0001.png", "frame_0002.png", "frames.json"})
    EXPECT_TRUE(fs::exists(dir / "frames" / f)) << f;
  ASSERT_EQ(run_cli("render --input " + q(dir / "run/scene.ldi") + " --trajectory " + q(dir / "traj.json") + " -o " +
                        q(dir / "frames_ldi"),
                    dir / "log"),
            0);
  EXPECT_EQ(read_png_rgb(dir / "frames/frame_0001.png"), read_png_rgb(dir / "frames_ldi/frame_0001.png"));

  // Middle frame of a symmetric lateral path is the input view.
  auto mid = read_png_rgb(dir / "frames/frame_0001.png"), input = read_png_rgb(dir / "scene/color.png");
  for (int y = 1; y < 63; ++y)
    for (int x = 1; x < 63; ++x)
      if (away_from_square(x, y)) {
        ASSERT_TRUE(close_colors(mid.at(x, y), input.at(x, y))) << x << "," << y;
      }

  auto glb = read_file_bytes(dir / "run/mesh.glb");
  glb.resize(glb.size() - 7);
  write_file_bytes(dir / "trunc.glb", glb);
  EXPECT_EQ(run_cli("render --input " + q(dir / "trunc.glb") + " --trajectory " + q(dir / "traj.json") + " -o " +
                        q(dir / "frames2"),
                    dir / "log"),
            2);
}

TEST(Cli, CompareReportsHoles) {
  auto dir = testutil::scratch_dir("cli_compare");
  ASSERT_EQ(run_cli("compare --scene two_layer --size 64 --shift 0 3 6 -o " + q(dir / "cmp"), dir / "log"), 0);
  auto rep = read_json(dir / "cmp/compare.json");
  ASSERT_EQ(rep["views"].size(), 3u);
  EXPECT_EQ(rep["views"][0]["naive_holes"].get<long long>(), 0);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(rep["views"][i]["pipeline_holes"].get<long long>(), 0);
  EXPECT_GT(rep["views"][2]["naive_holes"].get<long long>(), 0);
  EXPECT_TRUE(fs::exists(dir / "cmp/compare_02.png"));
  // Zero shift renders the input exactly on both sides.
  auto side = read_png_rgb(dir / "cmp/compare_00.png");
  Scene s = two_layer_scene(64, 64);
  for (int y = 1; y < 63; ++y)
    for (int x = 1; x < 63; ++x) {
      EXPECT_EQ(side.at(x, y), s.color.at(x, y));
      if (away_from_square(x, y)) {
        EXPECT_TRUE(close_colors(side.at(64 + x, y), s.color.at(x, y)));
      }
    }
}

TEST(Cli, MetricsJson) {
  auto dir = testutil::scratch_dir("cli_metrics");
  write_png_rgb(dir / "a.png", testutil::random_image(16, 16, 1));
  ASSERT_EQ(run_cli("metrics " + q(dir / "a.png") + " " + q(dir / "a.png"), dir / "out.json"), 0);
  auto j = read_json(dir / "out.json");
  EXPECT_EQ(j["psnr"], "inf");
  EXPECT_DOUBLE_EQ(j["ssim"].get<double>(), 1.0);
}

TEST(Cli, RepeatedBuildsAreBitIdentical) {
  auto dir = testutil::scratch_dir("cli_determinism");
  ASSERT_EQ(run_cli("synth --scene nested --size 96 -o " + q(dir / "scene"), dir / "log"), 0);
  std::ofstream(dir / "c.cfg") << "seed = 7\n";
  for (auto run : {"a", "b"})
    ASSERT_EQ(run_cli("build --color " + q(dir / "scene/color.png") + " --depth " + q(dir / "scene/depth.png") +
                          " --config " + q(dir / "c.cfg") + " -o " + q(dir / run),
                      dir / "log"),
              0);
  for (auto f : {"scene.ldi", "mesh.glb"}) EXPECT_EQ(read_file_bytes(dir / "a" / f), read_file_bytes(dir / "b" / f)) << f;
  // Everything but the timing report hashes identically.
  auto files = [&](const char* run) {
    auto all = read_json(dir / run / "manifest.json")["files"];
    nlohmann::json kept = nlohmann::json::array();
    for (auto& f : all)
      if (f["path"] != "report.json") kept.push_back(f);
    return kept;
  };
  EXPECT_EQ(files("a"), files("b"));
}
