#include <gtest/gtest.h>

#include <random>

#include "ldi3d/preprocess.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace ldi3d;

namespace {

DisparityMap ramp_map(int w, int h, int start, int len, float lo, float hi) {
  DisparityMap d(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      float t = std::clamp((x - start + 1) / float(len + 1), 0.f, 1.f);
      d.at(x, y) = lo + (hi - lo) * t;
    }
  return d;
}

// Columns of the middle row strictly between the two plateaus.
int transition_width(const DisparityMap& d, float lo, float hi) {
  int n = 0;
  int y = d.height / 2;
  for (int x = 0; x < d.width; ++x) {
    float v = d.at(x, y);
    if (std::abs(v - lo) > 1e-4f && std::abs(v - hi) > 1e-4f) ++n;
  }
  return n;
}

Discontinuities sites_only(const std::vector<Pos>& sites, int w, int h) {
  Discontinuities disc{Mask(w, h, 0), {}};
  for (Pos p : sites) disc.sites.at(p) = 1;
  return disc;
}

}  // namespace

TEST(Normalize, AffineEndpoints) {
  Plane<float> in(2, 1);
  in.data = {2.f, 4.f};
  auto out = normalize_disparity(in, DepthMode::Disparity);
  EXPECT_FLOAT_EQ(out.data[0], 0.f);
  EXPECT_FLOAT_EQ(out.data[1], 1.f);
}

TEST(Normalize, ConstantMapsToHalf) {
  auto out = normalize_disparity(Plane<float>(3, 3, 7.f), DepthMode::Depth);
  for (float v : out.data) EXPECT_EQ(v, 0.5f);
}

TEST(Normalize, DepthIsInverted) {
  Plane<float> in(3, 1);
  in.data = {1.f, 2.f, 4.f};
  auto out = normalize_disparity(in, DepthMode::Depth);
  EXPECT_NEAR(out.data[0], 1.0, 1e-7);
  EXPECT_NEAR(out.data[1], 1.0 / 3.0, 1e-7);
  EXPECT_NEAR(out.data[2], 0.0, 1e-7);
}

TEST(Normalize, RejectsBadDepth) {
  Plane<float> in(2, 1);
  in.data = {1.f, 0.f};
  EXPECT_THROW(normalize_disparity(in, DepthMode::Depth), InputError);
  in.data = {1.f, std::numeric_limits<float>::infinity()};
  EXPECT_THROW(normalize_disparity(in, DepthMode::Disparity), InputError);
}

TEST(Filter, ConstantIsUnchanged) {
  DisparityMap d(12, 9, 0.37f);
  EXPECT_EQ(bilateral_median_filter(d), d);
}

TEST(Filter, StepIsPreservedExactly) {
  DisparityMap d = testutil::vertical_step(20, 10, 9, 0.2f, 0.8f);
  auto out = bilateral_median_filter(d);
  EXPECT_EQ(out, d);
  EXPECT_EQ(out, oracle::filter_reference(d, {}));
}

TEST(Filter, RampIsSharpened) {
  DisparityMap d = ramp_map(32, 12, 12, 5, 0.2f, 0.8f);
  EXPECT_GE(transition_width(d, 0.2f, 0.8f), 5);
  auto out = bilateral_median_filter(d);
  EXPECT_LE(transition_width(out, 0.2f, 0.8f), 2);
  EXPECT_EQ(out, oracle::filter_reference(d, {}));
}

TEST(Filter, MatchesReferenceOnRandomMaps) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<float> u(0.f, 1.f);
  for (int trial = 0; trial < 20; ++trial) {
    DisparityMap d(17, 13);
    for (float& v : d.data) v = u(rng) < 0.5f ? 0.3f + 0.02f * u(rng) : u(rng);
    FilterParams p;
    p.gate_threshold = trial % 2 ? 0.04 : 0.0;
    EXPECT_EQ(bilateral_median_filter(d, p), oracle::filter_reference(d, p)) << "trial " << trial;
  }
}

TEST(Filter, RejectsEvenWindow) {
  FilterParams p;
  p.window = 6;
  EXPECT_THROW(bilateral_median_filter(DisparityMap(4, 4), p), ConfigError);
}

TEST(Discontinuities, ConstantMapHasNone) {
  auto disc = detect_discontinuities(DisparityMap(8, 8, 0.4f), 0.04f);
  EXPECT_TRUE(disc.pairs.empty());
}

TEST(Discontinuities, VerticalStepMarksFarColumn) {
  auto d = testutil::vertical_step(8, 6, 3, 0.2f, 0.8f);
  auto disc = detect_discontinuities(d, 0.04f);
  ASSERT_EQ(disc.pairs.size(), 6u);
  for (int y = 0; y < 6; ++y) {
    EXPECT_EQ(disc.pairs[y].far, (Pos{2, y}));
    EXPECT_EQ(disc.pairs[y].near, (Pos{3, y}));
    for (int x = 0; x < 8; ++x) EXPECT_EQ(disc.sites.at(x, y), x == 2 ? 1 : 0);
  }
  EXPECT_TRUE(detect_discontinuities(d, 0.7f).pairs.empty());
}

TEST(EdgeLinking, IsolatedSiteIsDropped) {
  Ldi ldi = lift_image(testutil::gray_image(8, 8), DisparityMap(8, 8));
  EXPECT_TRUE(link_depth_edges(sites_only({{3, 3}}, 8, 8), ldi, 10).empty());
}

TEST(EdgeLinking, StraightSegmentIsOneEdge) {
  std::vector<Pos> seg;
  for (int x = 5; x < 25; ++x) seg.push_back({x, 4});
  Ldi ldi = lift_image(testutil::gray_image(32, 8), DisparityMap(32, 8));
  auto edges = link_depth_edges(sites_only(seg, 32, 8), ldi, 10);
  ASSERT_EQ(edges.size(), 1u);
  EXPECT_EQ(edges[0].sites.size(), 20u);
}

TEST(EdgeLinking, TShapeDropsShortArm) {
  // Arms of 15 px left and right of a junction at (20, 10), and a 4 px stem below.
  std::vector<Pos> sites;
  for (int x = 5; x <= 35; ++x) sites.push_back({x, 10});
  for (int y = 11; y <= 14; ++y) sites.push_back({20, y});
  Ldi ldi = lift_image(testutil::gray_image(40, 20), DisparityMap(40, 20));
  auto edges = link_depth_edges(sites_only(sites, 40, 20), ldi, 10);
  ASSERT_EQ(edges.size(), 2u);
  // Junction sites (19, 10), (20, 10) and (20, 11) join the left edge,
  // (21, 10) the right one; the stem remainder is gone.
  EXPECT_EQ(edges[0].sites.size(), 17u);
  EXPECT_EQ(edges[1].sites.size(), 15u);
  EXPECT_EQ(edges[0].sites.front(), (Pos{5, 10}));
  EXPECT_EQ(edges[1].sites.front(), (Pos{21, 10}));
  for (const auto& e : edges)
    for (Pos p : e.sites) EXPECT_LE(p.y, 11);
}

TEST(EdgeLinking, CutPairsResolveToLinkedPixels) {
  auto d = testutil::vertical_step(12, 12, 6, 0.8f, 0.2f);
  Ldi ldi = lift_image(testutil::gray_image(12, 12), d);
  auto edges = link_depth_edges(detect_discontinuities(d, 0.04f), ldi, 10);
  ASSERT_EQ(edges.size(), 1u);
  ASSERT_EQ(edges[0].cut_pairs.size(), 12u);
  for (const CutPair& c : edges[0].cut_pairs) EXPECT_EQ(ldi.pixel(c.a).link(Dir::Right), c.b);
}

TEST(EdgeLinking, ScaledLength) {
  EXPECT_EQ(scaled_edge_length(10, 1024, 768), 10);
  EXPECT_EQ(scaled_edge_length(10, 128, 128), 1);
  EXPECT_EQ(scaled_edge_length(10, 512, 300), 5);
}
