#include "ldi3d/synthetic.hpp"

#include <algorithm>
#include <random>

namespace ldi3d {
namespace {

Rgb8 texture(int x, int y, Rgb8 tint) {
  const int check = ((x / 8) + (y / 8)) % 2;
  auto mix = [&](int base, int v) { return static_cast<std::uint8_t>(std::clamp(base / 2 + v / 2, 0, 255)); };
  return {mix(tint.r, 40 + 2 * (x % 64) + 60 * check), mix(tint.g, 40 + 2 * (y % 64)), mix(tint.b, 80 + 80 * check)};
}

}  // namespace

Scene layered_scene(int width, int height, float background, const std::vector<Layer>& layers) {
  Scene s{RgbImage(width, height), DisparityMap(width, height, background)};
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) s.color.at(x, y) = texture(x, y, {120, 160, 200});
  for (const Layer& l : layers)
    for (int y = std::max(0, l.rect.y); y < std::min(height, l.rect.y + l.rect.height); ++y)
      for (int x = std::max(0, l.rect.x); x < std::min(width, l.rect.x + l.rect.width); ++x) {
        s.color.at(x, y) = texture(x + 3, y + 5, l.tint);
        s.disparity.at(x, y) = l.disparity;
      }
  return s;
}

Scene two_layer_scene(int width, int height) {
  const int side = std::min(width, height) * 3 / 8;
  return layered_scene(width, height, 0.f, {{{(width - side) / 2, (height - side) / 2, side, side}, 1.f, {230, 90, 40}}});
}

Scene nested_scene(int width, int height) {
  const double sx = width / 128.0, sy = height / 128.0;
  auto r = [&](int x, int y, int w, int h) {
    return Rect{int(x * sx), int(y * sy), int(w * sx), int(h * sy)};
  };
  return layered_scene(width, height, 0.f,
                       {{r(0, 0, 64, 128), 0.5f, {60, 200, 90}}, {r(44, 50, 40, 20), 1.f, {230, 90, 40}}});
}

Scene random_scene(std::uint64_t seed, int width, int height) {
  std::mt19937_64 rng(seed);
  auto uni = [&](int lo, int hi) { return static_cast<int>(lo + rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  const float bg = static_cast<float>(uni(0, 20)) / 100.f;
  std::vector<Layer> layers;
  const int n = uni(1, 4);
  for (int i = 0; i < n; ++i) {
    const int w = uni(2, std::max(2, width * 2 / 3)), h = uni(2, std::max(2, height * 2 / 3));
    const int x = uni(-w / 2, width - w / 2), y = uni(-h / 2, height - h / 2);
    const float d = static_cast<float>(uni(25, 100)) / 100.f;
    layers.push_back({{x, y, w, h}, d, {std::uint8_t(uni(0, 255)), std::uint8_t(uni(0, 255)), std::uint8_t(uni(0, 255))}});
  }
  return layered_scene(width, height, bg, layers);
}

}  // namespace ldi3d
