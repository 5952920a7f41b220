#pragma once

#include "ldi3d/image.hpp"

namespace ldi3d {

struct Rect {
  int x = 0, y = 0, width = 0, height = 0;
  bool empty() const { return width <= 0 || height <= 0; }
  friend bool operator==(const Rect&, const Rect&) = default;
};

/// Flattened view of one context/synthesis region pair. Every plane covers
/// `bbox` (patch coordinates are lattice coordinates minus bbox origin).
///
/// Color, disparity and edges are zero on synthesis positions and on
/// excluded positions. Backends must not read excluded positions.
/// seed_color / seed_disparity hold the flood-fill initialization on
/// synthesis positions (zero elsewhere); backends may use them as a start.
struct InpaintRequest {
  Rect bbox;
  RgbImage color;
  DisparityMap disparity;
  Mask edges;
  Mask synthesis;
  Mask excluded;
  RgbImage seed_color;
  DisparityMap seed_disparity;

  int width() const { return bbox.width; }
  int height() const { return bbox.height; }
  bool is_context(int x, int y) const { return !synthesis.at(x, y) && !excluded.at(x, y); }
};

/// Backend output. Values are only meaningful on synthesis positions.
struct InpaintResult {
  Mask edges;
  RgbImage color;
  DisparityMap disparity;
};

}  // namespace ldi3d
