#pragma once

#include <vector>

#include "ldi3d/depth_edge.hpp"

namespace ldi3d {

struct CutLink {
  PixelId from = kNoPixel;
  Dir dir = Dir::Left;
  PixelId to = kNoPixel;
  friend bool operator==(const CutLink&, const CutLink&) = default;
};

/// One separated pair seen from the background side: stepping from
/// `background` in `toward` lands on the position of `foreground`.
struct SilhouetteBoundary {
  PixelId background = kNoPixel;
  Dir toward = Dir::Left;
  PixelId foreground = kNoPixel;
  friend bool operator==(const SilhouetteBoundary&, const SilhouetteBoundary&) = default;
};

struct SilhouettePair {
  std::vector<PixelId> foreground;  // sorted, unique
  std::vector<PixelId> background;  // sorted, unique
  std::vector<CutLink> cut_links;   // links removed by the cut, enough to undo it
  std::vector<SilhouetteBoundary> boundary;

  bool empty() const { return foreground.empty() && background.empty(); }
};

/// Disconnects every cut pair of the edge. The nearer (higher disparity)
/// pixel of each pair is foreground. Pairs that are already unlinked still
/// contribute silhouettes but produce no cut link. Stale ids (unknown or
/// removed without replacement) throw ConsistencyError.
SilhouettePair cut_edge(Ldi& ldi, const DepthEdge& edge);

/// Restores the links removed by cut_edge.
void undo_cut(Ldi& ldi, const SilhouettePair& silhouettes);

}  // namespace ldi3d
