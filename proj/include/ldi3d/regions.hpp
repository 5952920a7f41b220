#pragma once

#include <vector>

#include "ldi3d/cut.hpp"
#include "ldi3d/inpaint_types.hpp"

namespace ldi3d {

struct RegionParams {
  int n_syn = 40;
  int n_ctx = 100;
  int dilate = 5;
  /// Context never steps onto a neighbor nearer than itself by more than this.
  float threshold = 0.04f;
};

struct SynthesisSlot {
  Pos pos;
  Rgb8 seed_color;
  float seed_disparity = 0.f;
  PixelId seed_source = kNoPixel;
  /// Context pixel converted by dilation; merging replaces it.
  PixelId replaces = kNoPixel;
};

struct RegionPair {
  int edge_id = 0;
  std::vector<SynthesisSlot> synthesis;  // scan order of pos
  std::vector<PixelId> context;          // scan order of pos, then id

  bool empty() const { return synthesis.empty() && context.empty(); }
};

/// Grows the synthesis region (new pixel slots behind the foreground) and the
/// context region (existing pixels on the background side) around a cut.
///
/// Ring 0: context = background silhouette pixels; synthesis = the positions
/// one step from each background silhouette pixel toward its foreground
/// partner. Then, for i = 1..max(n_syn, n_ctx), a context round (if
/// i <= n_ctx) followed by a synthesis round (if i <= n_syn). A context round
/// follows live links from the previous ring; it never enters a foreground
/// silhouette pixel, a pixel nearer by more than `threshold`, or a position
/// already held by either region. A synthesis round steps to 4-neighbor
/// positions not held by either region. Frontiers are processed in scan
/// order, then by id. Afterwards the context rings 0..dilate-1 become
/// synthesis slots. Seeds come from the nearest background silhouette pixel
/// (BFS over slots, ties to the smaller id).
RegionPair extract_regions(const Ldi& ldi, const SilhouettePair& silhouettes, const RegionParams& params,
                           int edge_id = 0);

/// Rasterizes a region pair into its minimal bounding patch. A context
/// pixel is an edge site if a neighboring context pixel is nearer by more
/// than `edge_threshold`.
InpaintRequest flatten_regions(const Ldi& ldi, const RegionPair& region, float edge_threshold);

}  // namespace ldi3d
