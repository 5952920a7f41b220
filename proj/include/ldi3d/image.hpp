#pragma once

#include <cstdint>
#include <vector>

#include "ldi3d/error.hpp"

namespace ldi3d {

struct Rgb8 {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb8&, const Rgb8&) = default;
};

/// Integer lattice coordinate.
struct Pos {
  int x = 0, y = 0;
  friend bool operator==(const Pos&, const Pos&) = default;
};

/// Row-major (y, x) ordering used for all deterministic tie-breaking.
inline bool scan_less(const Pos& a, const Pos& b) {
  return a.y != b.y ? a.y < b.y : a.x < b.x;
}

/// Dense row-major 2D raster.
template <class T>
struct Plane {
  int width = 0;
  int height = 0;
  std::vector<T> data;

  Plane() = default;
  Plane(int w, int h, T fill = T{}) : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {
    if (w < 0 || h < 0) throw InputError("negative plane dimensions");
  }

  bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width && y < height; }
  bool contains(Pos p) const { return contains(p.x, p.y); }
  std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width + x; }

  T& at(int x, int y) { return data[index(x, y)]; }
  const T& at(int x, int y) const { return data[index(x, y)]; }
  T& at(Pos p) { return at(p.x, p.y); }
  const T& at(Pos p) const { return at(p.x, p.y); }

  bool empty() const { return data.empty(); }
  std::size_t size() const { return data.size(); }
  friend bool operator==(const Plane&, const Plane&) = default;
};

using RgbImage = Plane<Rgb8>;
using DisparityMap = Plane<float>;
using Mask = Plane<std::uint8_t>;

}  // namespace ldi3d
