#pragma once

#include <vector>

#include "ldi3d/ldi.hpp"

namespace ldi3d {

/// Two neighboring pixels separated by a depth discontinuity.
struct CutPair {
  PixelId a = kNoPixel;
  PixelId b = kNoPixel;
  friend bool operator==(const CutPair&, const CutPair&) = default;
};

/// A linked chain of discontinuity sites, the unit of inpainting.
struct DepthEdge {
  int id = 0;
  std::vector<Pos> sites;  // scan order
  std::vector<CutPair> cut_pairs;
};

}  // namespace ldi3d
