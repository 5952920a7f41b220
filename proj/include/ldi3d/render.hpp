#pragma once

#include <limits>

#include "ldi3d/mesh.hpp"

namespace ldi3d {

struct RenderResult {
  RgbImage color;
  Plane<float> depth;  // camera-space z; +inf where uncovered
  Mask coverage;
};

struct RenderOptions {
  double near = 1e-3;
  /// Row bands rendered concurrently; 0 picks from hardware concurrency.
  /// Output does not depend on the value.
  int threads = 0;
};

/// Z-buffered rasterization sampled at integer pixel centers. Vertices are
/// snapped to 1/256 px; an edge owns the samples lying on it only from one
/// side, so a shared edge is drawn exactly once. Colors are interpolated
/// perspective-correctly. The nearest fragment wins; ties keep the earlier
/// triangle.
RenderResult render_view(const TexturedMesh& mesh, const Camera& camera, int width, int height,
                         const RenderOptions& options = {});

struct WarpResult {
  RgbImage color;
  Mask holes;
};

/// Forward point splat of every source pixel into the destination view
/// (rounded to the nearest pixel with halves rounding up, nearest depth
/// wins, ties keep scan order).
WarpResult naive_warp(const RgbImage& color, const DisparityMap& disparity, const Camera& source,
                      const Camera& destination, const DepthModel& depth = {});

/// Uncovered pixels at least `border` pixels away from every image edge.
long long count_holes(const Mask& covered, int border);
Mask invert(const Mask& m);

}  // namespace ldi3d
