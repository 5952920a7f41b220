#include <gtest/gtest.h>

#include "ldi3d/build.hpp"
#include "ldi3d/ldi_io.hpp"
#include "ldi3d/pipeline.hpp"
#include "ldi3d/render.hpp"
#include "test_util.hpp"

using namespace ldi3d;

namespace {

std::vector<DepthEdge> scene_edges(const Scene& s, const Ldi& ldi, int min_len = 1) {
  return link_depth_edges(detect_discontinuities(s.disparity, 0.04f), ldi, min_len);
}

struct Views {
  long long naive = 0, layered = 0;
};

// Lateral view in which the nearest layer moves by `shift` pixels.
Views holes_after_shift(const Scene& s, const Ldi& ldi, double shift) {
  Camera cam = Camera::default_for(s.color.width, s.color.height);
  DepthModel dm;
  double t = shift * dm.depth(1.0) / cam.fx;
  Camera dst = cam.translated({t, 0, 0});
  int border = static_cast<int>(std::ceil(std::abs(shift))) + 2;
  Views v;
  v.naive = count_holes(invert(naive_warp(s.color, s.disparity, cam, dst, dm).holes), border);
  v.layered = count_holes(render_view(ldi_to_mesh(ldi, cam, dm), dst, s.color.width, s.color.height).coverage, border);
  return v;
}

}  // namespace

TEST(Pipeline, ZeroEdgesLeavesLdiIdentical) {
  Scene s = two_layer_scene(32, 32);
  Ldi ldi = lift_image(s.color, s.disparity);
  Ldi before = ldi;
  DiffusionBackend b;
  auto report = run_pipeline(ldi, {}, b);
  EXPECT_TRUE(same_structure(ldi, before));
  EXPECT_EQ(report.levels, 0);
  EXPECT_EQ(report.edges_processed, 0);
}

TEST(Pipeline, OneEdgeSceneIsHoleFree) {
  Scene s = two_layer_scene(64, 64);
  Ldi ldi = lift_image(s.color, s.disparity);
  auto edges = scene_edges(s, ldi);
  ASSERT_EQ(edges.size(), 1u);
  DiffusionBackend b;
  PipelineOptions opt;
  opt.validate_each_step = true;
  auto report = run_pipeline(ldi, edges, b, opt);
  ldi.validate();
  EXPECT_EQ(report.levels, 1);
  EXPECT_GT(report.synthesized_pixels, 0);
  for (double shift : {3.0, -5.0, 8.0}) {
    Views v = holes_after_shift(s, ldi, shift);
    EXPECT_GE(v.naive, 1) << shift;
    EXPECT_EQ(v.layered, 0) << shift;
  }
}

TEST(Pipeline, NestedSceneNeedsTwoLevels) {
  Scene s = nested_scene(128, 128);
  Ldi ldi = lift_image(s.color, s.disparity);
  DiffusionBackend b;
  auto report = run_pipeline(ldi, scene_edges(s, ldi), b);
  EXPECT_EQ(report.levels, 2);
  ASSERT_EQ(report.edges_per_level.size(), 2u);
  EXPECT_GT(report.edges_per_level[1], 0);
  EXPECT_TRUE(report.warnings.empty());
}

TEST(Pipeline, DepthCapIsReportedAsWarning) {
  Scene s = nested_scene(128, 128);
  Ldi ldi = lift_image(s.color, s.disparity);
  DiffusionBackend b;
  PipelineOptions opt;
  opt.depth_cap = 1;
  auto report = run_pipeline(ldi, scene_edges(s, ldi), b, opt);
  EXPECT_EQ(report.levels, 1);
  EXPECT_FALSE(report.warnings.empty());
  ldi.validate();
}

TEST(Pipeline, MutationHookSeesValidStructure) {
  Scene s = random_scene(17, 48, 48);
  Ldi ldi = lift_image(s.color, s.disparity);
  DiffusionBackend b;
  PipelineOptions opt;
  int calls = 0;
  opt.on_mutation = [&](const Ldi& l, const std::string&) {
    ++calls;
    l.validate();
  };
  run_pipeline(ldi, scene_edges(s, ldi), b, opt);
  EXPECT_GT(calls, 0);
}

TEST(Pipeline, RunsAreDeterministic) {
  auto once = [](std::optional<std::uint64_t> seed) {
    Scene s = random_scene(99, 48, 48);
    Ldi ldi = lift_image(s.color, s.disparity);
    DiffusionBackend b;
    PipelineOptions opt;
    opt.shuffle_seed = seed;
    run_pipeline(ldi, scene_edges(s, ldi), b, opt);
    return encode_ldi(ldi);
  };
  EXPECT_EQ(once(std::nullopt), once(std::nullopt));
  EXPECT_EQ(once(5), once(5));
}

TEST(Build, FlatDepthGivesSingleLayer) {
  PipelineConfig cfg;
  DiffusionBackend b;
  auto r = build_ldi(testutil::gray_image(16, 16), Plane<float>(16, 16, 3.f), cfg, b);
  EXPECT_EQ(r.report.input_edges, 0);
  EXPECT_EQ(r.ldi.pixel_count(), 256u);
}

TEST(Build, TwoLayerEdgeCountMatchesScene) {
  PipelineConfig cfg;
  DiffusionBackend b;
  Scene s = two_layer_scene(128, 128);
  auto r = build_ldi(s.color, s.disparity, cfg, b);
  // One closed square outline.
  EXPECT_EQ(r.report.input_edges, 1);
  EXPECT_EQ(r.edges.size(), 1u);
  // Far side of each pair: the ring just outside the 48 px square.
  EXPECT_EQ(r.edges[0].sites.size(), 4u * 48);
}
