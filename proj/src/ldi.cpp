#include "ldi3d/ldi.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace ldi3d {

Ldi::Ldi(int width, int height) : width_(width), height_(height) {
  if (width < 0 || height < 0) throw InputError("negative LDI dimensions");
  index_.resize(static_cast<std::size_t>(width) * height);
}

PixelId Ldi::add_pixel(Pos pos, Rgb8 color, float disparity) {
  if (pos.x < 0 || pos.y < 0 || pos.x >= width_ || pos.y >= height_)
    throw ConsistencyError("pixel position outside lattice");
  if (store_.size() >= kNoPixel) throw ConsistencyError("pixel id space exhausted");
  auto id = static_cast<PixelId>(store_.size());
  store_.push_back(LdiPixel{pos, color, disparity});
  alive_.push_back(1);
  forward_.push_back(kNoPixel);
  index_[static_cast<std::size_t>(pos.y) * width_ + pos.x].push_back(id);
  ++live_;
  return id;
}

void Ldi::remove_pixel(PixelId id, PixelId replacement) {
  if (!alive(id)) throw ConsistencyError("remove of dead pixel " + std::to_string(id));
  for (Dir d : kDirs) unlink(id, d);
  auto& slot = index_[static_cast<std::size_t>(store_[id].pos.y) * width_ + store_[id].pos.x];
  slot.erase(std::find(slot.begin(), slot.end(), id));
  alive_[id] = 0;
  forward_[id] = replacement;
  --live_;
}

LdiPixel& Ldi::mut(PixelId id) {
  if (!alive(id)) throw ConsistencyError("stale pixel id " + std::to_string(id));
  return store_[id];
}

const LdiPixel& Ldi::pixel(PixelId id) const {
  if (!alive(id)) throw ConsistencyError("stale pixel id " + std::to_string(id));
  return store_[id];
}

PixelId Ldi::resolve(PixelId id) const {
  // Replacement chains are short (one hop per merge touching the pixel).
  while (id < store_.size() && !alive_[id]) id = forward_[id];
  return id < store_.size() ? id : kNoPixel;
}

void Ldi::link(PixelId a, Dir d, PixelId b) {
  LdiPixel& pa = mut(a);
  LdiPixel& pb = mut(b);
  if (!(step(pa.pos, d) == pb.pos)) throw ConsistencyError("link between non-adjacent pixels");
  if (pa.has_link(d) || pb.has_link(opposite(d))) throw ConsistencyError("link slot already occupied");
  pa.links[static_cast<int>(d)] = b;
  pb.links[static_cast<int>(opposite(d))] = a;
}

void Ldi::unlink(PixelId a, Dir d) {
  LdiPixel& pa = mut(a);
  PixelId b = pa.link(d);
  if (b == kNoPixel) return;
  LdiPixel& pb = mut(b);
  if (pb.link(opposite(d)) != a) throw ConsistencyError("asymmetric link found during unlink");
  pa.links[static_cast<int>(d)] = kNoPixel;
  pb.links[static_cast<int>(opposite(d))] = kNoPixel;
}

std::span<const PixelId> Ldi::at(Pos p) const {
  if (p.x < 0 || p.y < 0 || p.x >= width_ || p.y >= height_) return {};
  return index_[static_cast<std::size_t>(p.y) * width_ + p.x];
}

std::size_t Ldi::directed_link_count() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < store_.size(); ++i)
    if (alive_[i])
      for (Dir d : kDirs) n += store_[i].has_link(d) ? 1 : 0;
  return n;
}

std::vector<PixelId> Ldi::pixel_ids() const {
  std::vector<PixelId> ids;
  ids.reserve(live_);
  for (std::size_t i = 0; i < store_.size(); ++i)
    if (alive_[i]) ids.push_back(static_cast<PixelId>(i));
  return ids;
}

void Ldi::validate() const {
  auto fail = [](const std::string& msg) { throw ConsistencyError("LDI validation: " + msg); };
  std::size_t indexed = 0;
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      for (PixelId id : index_[static_cast<std::size_t>(y) * width_ + x]) {
        if (!alive(id)) fail("index references dead pixel " + std::to_string(id));
        if (!(store_[id].pos == Pos{x, y})) fail("index position mismatch for " + std::to_string(id));
        ++indexed;
      }
    }
  }
  std::size_t live = 0;
  for (std::size_t i = 0; i < store_.size(); ++i) {
    if (!alive_[i]) continue;
    ++live;
    const LdiPixel& p = store_[i];
    if (p.pos.x < 0 || p.pos.y < 0 || p.pos.x >= width_ || p.pos.y >= height_) fail("pixel out of bounds");
    if (!std::isfinite(p.disparity)) fail("non-finite disparity");
    for (Dir d : kDirs) {
      PixelId n = p.link(d);
      if (n == kNoPixel) continue;
      if (!alive(n)) fail("link to dead pixel from " + std::to_string(i));
      if (!(store_[n].pos == step(p.pos, d))) fail("link to non-adjacent pixel from " + std::to_string(i));
      if (store_[n].link(opposite(d)) != i) fail("asymmetric link at " + std::to_string(i));
    }
  }
  if (live != live_) fail("live count mismatch");
  if (indexed != live) fail("index/store size mismatch");
}

Ldi lift_image(const RgbImage& color, const DisparityMap& disparity) {
  if (color.width != disparity.width || color.height != disparity.height)
    throw InputError("color and disparity dimensions differ");
  for (float v : disparity.data)
    if (!std::isfinite(v)) throw InputError("non-finite disparity");
  Ldi ldi(color.width, color.height);
  const int w = color.width, h = color.height;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) ldi.add_pixel({x, y}, color.at(x, y), disparity.at(x, y));
  // Ids equal y*w + x by construction.
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      auto id = static_cast<PixelId>(y * w + x);
      if (x + 1 < w) ldi.link(id, Dir::Right, id + 1);
      if (y + 1 < h) ldi.link(id, Dir::Down, id + static_cast<PixelId>(w));
    }
  }
  return ldi;
}

bool same_structure(const Ldi& a, const Ldi& b) {
  if (a.width() != b.width() || a.height() != b.height()) return false;
  auto ia = a.pixel_ids();
  if (ia != b.pixel_ids()) return false;
  for (PixelId id : ia) {
    const LdiPixel& pa = a.pixel(id);
    const LdiPixel& pb = b.pixel(id);
    if (!(pa.pos == pb.pos) || !(pa.color == pb.color) || pa.links != pb.links) return false;
    if (std::bit_cast<std::uint32_t>(pa.disparity) != std::bit_cast<std::uint32_t>(pb.disparity)) return false;
  }
  return true;
}

}  // namespace ldi3d
