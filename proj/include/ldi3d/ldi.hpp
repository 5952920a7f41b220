#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "ldi3d/image.hpp"

namespace ldi3d {

/// Stable handle of an LDI pixel. Ids are append-only and never reused.
using PixelId = std::uint32_t;
inline constexpr PixelId kNoPixel = 0xFFFFFFFFu;

enum class Dir : std::uint8_t { Left = 0, Right = 1, Up = 2, Down = 3 };
inline constexpr std::array<Dir, 4> kDirs{Dir::Left, Dir::Right, Dir::Up, Dir::Down};

constexpr Dir opposite(Dir d) {
  switch (d) {
    case Dir::Left: return Dir::Right;
    case Dir::Right: return Dir::Left;
    case Dir::Up: return Dir::Down;
    case Dir::Down: return Dir::Up;
  }
  return d;
}

constexpr Pos step(Pos p, Dir d) {
  switch (d) {
    case Dir::Left: return {p.x - 1, p.y};
    case Dir::Right: return {p.x + 1, p.y};
    case Dir::Up: return {p.x, p.y - 1};
    case Dir::Down: return {p.x, p.y + 1};
  }
  return p;
}

struct LdiPixel {
  Pos pos;
  Rgb8 color;
  float disparity = 0.f;
  std::array<PixelId, 4> links{kNoPixel, kNoPixel, kNoPixel, kNoPixel};

  PixelId link(Dir d) const { return links[static_cast<int>(d)]; }
  bool has_link(Dir d) const { return link(d) != kNoPixel; }
};

/// Layered depth image: a lattice where every position holds zero or more
/// pixels, each with at most one neighbor per cardinal direction.
///
/// Single writer; concurrent readers are fine as long as nobody mutates.
class Ldi {
 public:
  Ldi() = default;
  Ldi(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }

  PixelId add_pixel(Pos pos, Rgb8 color, float disparity);

  /// Unlinks and tombstones a pixel. If `replacement` is given, resolve()
  /// on the removed id yields it, so stale references held elsewhere
  /// (pending edges) follow the pixel that took its place.
  void remove_pixel(PixelId id, PixelId replacement = kNoPixel);

  /// Symmetric link a --d--> b. Throws ConsistencyError if the pixels are not
  /// lattice neighbors in direction d or if either side is already linked.
  void link(PixelId a, Dir d, PixelId b);
  /// Removes a's link in direction d and the reverse link. No-op if absent.
  void unlink(PixelId a, Dir d);

  bool alive(PixelId id) const { return id < store_.size() && alive_[id]; }
  const LdiPixel& pixel(PixelId id) const;
  /// Follows replacement chains. kNoPixel if the id is unknown or was removed without replacement.
  PixelId resolve(PixelId id) const;

  std::span<const PixelId> at(Pos p) const;
  std::span<const PixelId> at(int x, int y) const { return at(Pos{x, y}); }

  std::size_t pixel_count() const { return live_; }
  /// One past the largest id ever issued.
  std::size_t id_bound() const { return store_.size(); }
  std::size_t directed_link_count() const;

  /// Live pixel ids in increasing order.
  std::vector<PixelId> pixel_ids() const;

  /// Full-structure check: bounds, index/store bijection, lattice adjacency and
  /// symmetry of every link. Throws ConsistencyError on the first violation.
  void validate() const;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<LdiPixel> store_;
  std::vector<std::uint8_t> alive_;
  std::vector<PixelId> forward_;
  std::vector<std::vector<PixelId>> index_;
  std::size_t live_ = 0;

  LdiPixel& mut(PixelId id);
};

/// One layer everywhere, fully 4-connected.
Ldi lift_image(const RgbImage& color, const DisparityMap& disparity);

/// True when both structures hold the same live ids with identical
/// positions, colors, disparities and links.
bool same_structure(const Ldi& a, const Ldi& b);

}  // namespace ldi3d
