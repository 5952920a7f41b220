#include <gtest/gtest.h>

#include <fstream>

#include "ldi3d/gltf.hpp"
#include "ldi3d/mesh.hpp"
#include "ldi3d/render.hpp"
#include "ldi3d/trajectory.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace ldi3d;

TEST(Mesh, SinglePixel) {
  auto mesh = ldi_to_mesh(lift_image(testutil::gray_image(1, 1), DisparityMap(1, 1)), Camera::default_for(1, 1));
  EXPECT_EQ(mesh.vertices.size(), 1u);
  EXPECT_TRUE(mesh.triangles.empty());
}

TEST(Mesh, TwoByTwo) {
  auto mesh = ldi_to_mesh(lift_image(testutil::gray_image(2, 2), DisparityMap(2, 2)), Camera::default_for(2, 2));
  EXPECT_EQ(mesh.vertices.size(), 4u);
  ASSERT_EQ(mesh.triangles.size(), 2u);
  EXPECT_EQ(mesh.triangles[0], (std::array<std::uint32_t, 3>{0, 1, 3}));
  EXPECT_EQ(mesh.triangles[1], (std::array<std::uint32_t, 3>{0, 3, 2}));
}

TEST(Mesh, CutLinkRemovesCells) {
  Ldi ldi = lift_image(testutil::gray_image(3, 3), DisparityMap(3, 3));
  ldi.unlink(4, Dir::Right);
  auto mesh = ldi_to_mesh(ldi, Camera::default_for(3, 3));
  EXPECT_EQ(mesh.triangles.size(), 2 * oracle::linked_cells(ldi));
  EXPECT_EQ(mesh.triangles.size(), 4u);
}

TEST(Mesh, VerticesUnprojectThroughDepthModel) {
  DisparityMap d(4, 3, 0.5f);
  auto mesh = ldi_to_mesh(lift_image(testutil::gray_image(4, 3), d), Camera::default_for(4, 3));
  const double z = 1.0 / (0.9 * 0.5 + 0.1);
  const double f = 0.8 * 4;
  EXPECT_NEAR(mesh.vertices[0].position[2], z, 1e-6);
  EXPECT_NEAR(mesh.vertices[0].position[0], (0 - 1.5) * z / f, 1e-6);
  EXPECT_NEAR(mesh.vertices[0].position[1], (0 - 1.0) * z / f, 1e-6);
}

TEST(Render, EmptyMeshIsUncovered) {
  auto r = render_view(TexturedMesh{}, Camera::default_for(8, 8), 8, 8);
  for (auto v : r.coverage.data) EXPECT_EQ(v, 0);
  for (float z : r.depth.data) EXPECT_TRUE(std::isinf(z));
}

TEST(Render, IdentityRoundTrip) {
  RgbImage img = testutil::random_image(40, 30, 2);
  Scene s = two_layer_scene(40, 30);
  auto cam = Camera::default_for(40, 30);
  auto r = render_view(ldi_to_mesh(lift_image(img, s.disparity), cam), cam, 40, 30);
  for (int y = 0; y < 30; ++y)
    for (int x = 0; x < 40; ++x) {
      // Samples on the outer mesh boundary belong to it from one side only.
      if (x > 0 && y > 0 && x < 39 && y < 29) {
        ASSERT_TRUE(r.coverage.at(x, y)) << x << "," << y;
      }
      if (!r.coverage.at(x, y)) continue;
      const Rgb8 &a = r.color.at(x, y), &b = img.at(x, y);
      EXPECT_LE(std::abs(a.r - b.r), 1);
      EXPECT_LE(std::abs(a.g - b.g), 1);
      EXPECT_LE(std::abs(a.b - b.b), 1);
    }
}

TEST(Render, ThreadCountDoesNotChangeOutput) {
  Scene s = random_scene(4, 64, 48);
  auto cam = Camera::default_for(64, 48);
  auto mesh = ldi_to_mesh(lift_image(s.color, s.disparity), cam);
  auto dst = cam.translated({0.03, -0.01, 0.02});
  auto a = render_view(mesh, dst, 64, 48, {1e-3, 1});
  auto b = render_view(mesh, dst, 64, 48, {1e-3, 7});
  EXPECT_EQ(a.color, b.color);
  EXPECT_EQ(a.coverage, b.coverage);
  EXPECT_EQ(a.depth, b.depth);
}

TEST(Render, NearestSurfaceWins) {
  // Two overlapping single-cell quads at different depths.
  TexturedMesh m;
  auto quad = [&](float z, Rgb8 c) {
    auto base = static_cast<std::uint32_t>(m.vertices.size());
    for (auto [x, y] : {std::pair{-1.f, -1.f}, {1.f, -1.f}, {-1.f, 1.f}, {1.f, 1.f}})
      m.vertices.push_back({{x * z, y * z, z}, c});
    m.triangles.push_back({base, base + 1, base + 3});
    m.triangles.push_back({base, base + 3, base + 2});
  };
  quad(2.f, {255, 0, 0});
  quad(1.f, {0, 255, 0});
  Camera cam;
  cam.fx = cam.fy = 4;
  cam.cx = cam.cy = 4.5;
  auto r = render_view(m, cam, 10, 10);
  EXPECT_EQ(r.color.at(5, 5), (Rgb8{0, 255, 0}));
  EXPECT_NEAR(r.depth.at(5, 5), 1.0, 1e-6);
}

TEST(Render, ParallaxMatchesPinholeModel) {
  const int w = 96, h = 32;
  RgbImage tex = testutil::stripes(w, h);
  Camera cam = Camera::default_for(w, h);
  for (double disp : {0.2, 0.7}) {
    DepthModel dm;
    double d = dm.depth(disp);
    auto mesh = ldi_to_mesh(lift_image(tex, DisparityMap(w, h, static_cast<float>(disp))), cam, dm);
    auto ref = render_view(mesh, cam, w, h);
    for (double px : {2.0, 4.5}) {
      double t = px * d / cam.fx;
      auto moved = render_view(mesh, cam.translated({t, 0, 0}), w, h);
      double expect = -cam.fx * t / d;
      EXPECT_NEAR(testutil::measured_shift(ref, moved, 8), expect, 0.5) << disp << " " << px;
    }
  }
}

TEST(NaiveWarp, ZeroTranslationHasNoHoles) {
  Scene s = two_layer_scene(32, 32);
  auto cam = Camera::default_for(32, 32);
  auto w = naive_warp(s.color, s.disparity, cam, cam);
  EXPECT_EQ(count_holes(invert(w.holes), 0), 0);
  EXPECT_EQ(w.color, s.color);
}

TEST(NaiveWarp, TwoLayerHolesMatchGeometry) {
  Scene s = two_layer_scene(128, 128);
  auto cam = Camera::default_for(128, 128);
  DepthModel dm;
  for (double px : {1.0, 4.0, -7.0, 10.0}) {
    double t = px * dm.depth(1.0) / cam.fx;
    auto w = naive_warp(s.color, s.disparity, cam, cam.translated({t, 0, 0}), dm);
    int border = static_cast<int>(std::ceil(std::abs(px))) + 2;
    long long expect = oracle::layered_warp_holes(128, 128, 0.f, {{{40, 40, 48, 48}, 1.f}}, cam.fx, t, dm, border);
    long long got = count_holes(invert(w.holes), border);
    EXPECT_GT(got, 0);
    EXPECT_EQ(got, expect) << px;
  }
}

TEST(Glb, RoundTrip) {
  Scene s = random_scene(8, 12, 9);
  auto mesh = ldi_to_mesh(lift_image(s.color, s.disparity), Camera::default_for(12, 9));
  auto back = decode_glb(encode_glb(mesh));
  ASSERT_EQ(back.vertices.size(), mesh.vertices.size());
  EXPECT_EQ(back.triangles, mesh.triangles);
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    for (int k = 0; k < 3; ++k) EXPECT_EQ(back.vertices[i].position[k], mesh.vertices[i].position[k]);
    EXPECT_EQ(back.vertices[i].color, mesh.vertices[i].color);
  }
}

TEST(Glb, QuadHasTwoTriangles) {
  auto mesh = ldi_to_mesh(lift_image(testutil::gray_image(2, 2), DisparityMap(2, 2)), Camera::default_for(2, 2));
  auto bytes = encode_glb(mesh);
  ASSERT_GE(bytes.size(), 20u);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "glTF");
  EXPECT_EQ(bytes.size() % 4, 0u);
  EXPECT_EQ(decode_glb(bytes).triangles.size(), 2u);
}

TEST(Glb, TruncatedAndEmpty) {
  auto mesh = ldi_to_mesh(lift_image(testutil::gray_image(3, 3), DisparityMap(3, 3)), Camera::default_for(3, 3));
  auto bytes = encode_glb(mesh);
  bytes.resize(bytes.size() / 2);
  EXPECT_THROW(decode_glb(bytes), InputError);
  auto empty = decode_glb(encode_glb(TexturedMesh{}));
  EXPECT_TRUE(empty.vertices.empty());
  EXPECT_TRUE(empty.triangles.empty());
}

TEST(Obj, WritesColoredVertices) {
  auto dir = testutil::scratch_dir("obj");
  auto mesh = ldi_to_mesh(lift_image(testutil::gray_image(2, 2, 255), DisparityMap(2, 2)), Camera::default_for(2, 2));
  write_obj(dir / "m.obj", mesh);
  std::ifstream in(dir / "m.obj");
  std::string line;
  int v = 0, f = 0;
  while (std::getline(in, line)) {
    if (line.rfind("v ", 0) == 0) {
      ++v;
      std::istringstream ss(line.substr(2));
      double x, y, z, r, g, b;
      ss >> x >> y >> z >> r >> g >> b;
      EXPECT_EQ(r, 1.0);
    }
    if (line.rfind("f ", 0) == 0) ++f;
  }
  EXPECT_EQ(v, 4);
  EXPECT_EQ(f, 2);
}

TEST(Trajectory, ZeroFramesIsEmpty) {
  auto t = parse_trajectory(R"({"type": "lateral", "frames": 0, "amplitude": 0.1, "width": 8, "height": 8})");
  EXPECT_TRUE(t.cameras().empty());
  EXPECT_TRUE(render_trajectory(TexturedMesh{}, t).empty());
}

TEST(Trajectory, LateralEndpointsMatchDirectRender) {
  Scene s = two_layer_scene(32, 32);
  auto cam = Camera::default_for(32, 32);
  auto mesh = ldi_to_mesh(lift_image(s.color, s.disparity), cam);
  auto t = parse_trajectory(R"({"type": "lateral", "frames": 2, "amplitude": 0.05, "width": 32, "height": 32})");
  auto frames = render_trajectory(mesh, t);
  ASSERT_EQ(frames.size(), 2u);
  EXPECT_EQ(frames[0].color, render_view(mesh, cam.translated({-0.05, 0, 0}), 32, 32).color);
  EXPECT_EQ(frames[1].color, render_view(mesh, cam.translated({0.05, 0, 0}), 32, 32).color);
}

TEST(Trajectory, OrbitFrameCount) {
  auto t = parse_trajectory(R"({"type": "orbit", "frames": 30, "amplitude": 0.02, "width": 16, "height": 16})");
  EXPECT_EQ(t.cameras().size(), 30u);
  auto again = parse_trajectory(trajectory_to_json(t));
  EXPECT_EQ(again.cameras().size(), 30u);
  EXPECT_EQ(again.cameras()[7].translation, t.cameras()[7].translation);
}

TEST(Trajectory, ExplicitPosesAndErrors) {
  auto t = parse_trajectory(R"({"type": "poses", "width": 8, "height": 8,
    "intrinsics": {"fx": 10, "fy": 10, "cx": 3.5, "cy": 3.5},
    "poses": [{"rotation": [1,0,0,0,1,0,0,0,1], "translation": [0.1, 0, 0]}]})");
  ASSERT_EQ(t.cameras().size(), 1u);
  EXPECT_EQ(t.cameras()[0].fx, 10);
  EXPECT_EQ(t.cameras()[0].translation[0], 0.1);
  EXPECT_THROW(parse_trajectory("{"), ConfigError);
  EXPECT_THROW(parse_trajectory(R"({"type": "spiral", "frames": 2, "width": 8, "height": 8})"), ConfigError);
  EXPECT_THROW(parse_trajectory(R"({"type": "poses", "width": 8, "height": 8,
    "poses": [{"rotation": [2,0,0,0,1,0,0,0,1], "translation": [0, 0, 0]}]})"), ConfigError);
}
