#pragma once

#include <cstdint>
#include <vector>

#include "ldi3d/image.hpp"
#include "ldi3d/inpaint_types.hpp"

namespace ldi3d {

struct Scene {
  RgbImage color;
  DisparityMap disparity;
};

struct Layer {
  Rect rect;
  float disparity;
  Rgb8 tint;
};

/// Textured background at disparity `background` with axis-aligned
/// rectangles painted on top in order.
Scene layered_scene(int width, int height, float background, const std::vector<Layer>& layers);

/// Background at disparity 0 and one centered square occluder at disparity 1.
Scene two_layer_scene(int width = 128, int height = 128);

/// Mid-depth left half over the background, and a near band straddling
/// the mid/background boundary.
Scene nested_scene(int width = 128, int height = 128);

/// 1-4 random rectangles with random disparities over a random background.
Scene random_scene(std::uint64_t seed, int width, int height);

}  // namespace ldi3d
