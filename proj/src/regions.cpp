#include "ldi3d/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ldi3d {
namespace {

struct Keyed {
  Pos pos;
  PixelId id;
};

bool keyed_less(const Keyed& a, const Keyed& b) {
  if (!(a.pos == b.pos)) return scan_less(a.pos, b.pos);
  return a.id < b.id;
}

}  // namespace

RegionPair extract_regions(const Ldi& ldi, const SilhouettePair& sil, const RegionParams& params, int edge_id) {
  RegionPair out;
  out.edge_id = edge_id;
  if (sil.background.empty()) return out;
  if (params.n_syn < 0 || params.n_ctx < 0 || params.dilate < 0) throw ConfigError("region iteration counts must be >= 0");

  const int w = ldi.width(), h = ldi.height();
  const std::size_t nid = ldi.id_bound();
  std::vector<std::uint8_t> is_fg(nid, 0), is_bg(nid, 0), in_ctx(nid, 0);
  std::vector<int> ctx_ring(nid, -1);
  for (PixelId id : sil.foreground) is_fg[id] = 1;
  for (PixelId id : sil.background) is_bg[id] = 1;

  Plane<PixelId> ctx_at(w, h, kNoPixel);
  Mask syn(w, h, 0);

  std::vector<Keyed> ctx_frontier;
  {
    std::vector<Keyed> seeds;
    for (PixelId id : sil.background) seeds.push_back({ldi.pixel(id).pos, id});
    std::sort(seeds.begin(), seeds.end(), keyed_less);
    for (const Keyed& k : seeds) {
      if (ctx_at.at(k.pos) != kNoPixel) continue;
      ctx_at.at(k.pos) = k.id;
      in_ctx[k.id] = 1;
      ctx_ring[k.id] = 0;
      ctx_frontier.push_back(k);
    }
  }

  // Reference disparity of the background layer a slot continues. A slot is
  // only placed where that layer is hidden: the nearest pixel at the
  // position is nearer than ref by more than the threshold and no pixel
  // there is within the threshold of ref.
  Plane<float> syn_ref(w, h, 0.f);
  auto blocked = [&](Pos q, float ref) {
    bool occluded = false;
    for (PixelId e : ldi.at(q)) {
      const float d = ldi.pixel(e).disparity;
      if (std::abs(d - ref) <= params.threshold) return true;
      if (d - ref > params.threshold) occluded = true;
    }
    return !occluded;
  };
  std::vector<Pos> syn_frontier;
  {
    std::vector<Keyed> seeds;
    for (const SilhouetteBoundary& b : sil.boundary)
      seeds.push_back({step(ldi.pixel(b.background).pos, b.toward), b.background});
    std::sort(seeds.begin(), seeds.end(), keyed_less);
    for (const Keyed& k : seeds) {
      Pos p = k.pos;
      if (!syn.contains(p) || syn.at(p) || ctx_at.at(p) != kNoPixel) continue;
      const float ref = ldi.pixel(k.id).disparity;
      if (blocked(p, ref)) continue;
      syn.at(p) = 1;
      syn_ref.at(p) = ref;
      syn_frontier.push_back(p);
    }
  }

  const int rounds = std::max(params.n_syn, params.n_ctx);
  for (int i = 1; i <= rounds; ++i) {
    if (i <= params.n_ctx) {
      std::vector<Keyed> next;
      for (const Keyed& k : ctx_frontier) {
        const LdiPixel& c = ldi.pixel(k.id);
        for (Dir d : kDirs) {
          PixelId n = c.link(d);
          if (n == kNoPixel || in_ctx[n]) continue;
          if (is_fg[n] && !is_bg[n]) continue;
          const LdiPixel& pn = ldi.pixel(n);
          if (pn.disparity - c.disparity > params.threshold) continue;
          if (ctx_at.at(pn.pos) != kNoPixel || syn.at(pn.pos)) continue;
          ctx_at.at(pn.pos) = n;
          in_ctx[n] = 1;
          ctx_ring[n] = i;
          next.push_back({pn.pos, n});
        }
      }
      std::sort(next.begin(), next.end(), keyed_less);
      ctx_frontier = std::move(next);
    }
    if (i <= params.n_syn) {
      std::vector<Pos> next;
      for (Pos s : syn_frontier) {
        for (Dir d : kDirs) {
          Pos q = step(s, d);
          if (!syn.contains(q) || syn.at(q) || ctx_at.at(q) != kNoPixel) continue;
          if (blocked(q, syn_ref.at(s))) continue;
          syn.at(q) = 1;
          syn_ref.at(q) = syn_ref.at(s);
          next.push_back(q);
        }
      }
      std::sort(next.begin(), next.end(), scan_less);
      syn_frontier = std::move(next);
    }
  }

  // Dilation: the innermost context rings turn into synthesis slots.
  Plane<PixelId> replaces(w, h, kNoPixel);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      PixelId c = ctx_at.at(x, y);
      if (c == kNoPixel || ctx_ring[c] >= params.dilate) continue;
      replaces.at(x, y) = c;
      ctx_at.at(x, y) = kNoPixel;
      syn.at(x, y) = 1;
    }

  // Seed propagation: layered BFS over slot positions from the background silhouette.
  constexpr PixelId kUnset = kNoPixel;
  Plane<PixelId> source(w, h, kUnset);
  Mask visited(w, h, 0);
  Plane<int> depth(w, h, -1);
  int level = 0;
  std::vector<Pos> layer;
  for (PixelId b : sil.background) {
    Pos p = ldi.pixel(b).pos;
    if (!visited.at(p)) {
      visited.at(p) = 1;
      depth.at(p) = 0;
      layer.push_back(p);
    }
    source.at(p) = std::min(source.at(p), b);
  }
  while (!layer.empty()) {
    ++level;
    std::vector<Pos> next;
    for (Pos p : layer) {
      for (Dir d : kDirs) {
        Pos q = step(p, d);
        if (!syn.contains(q) || !syn.at(q)) continue;
        if (!visited.at(q)) {
          visited.at(q) = 1;
          depth.at(q) = level;
          next.push_back(q);
          source.at(q) = source.at(p);
        } else if (depth.at(q) == level) {
          source.at(q) = std::min(source.at(q), source.at(p));
        }
      }
    }
    layer = std::move(next);
  }

  const PixelId fallback = sil.background.front();
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!syn.at(x, y)) continue;
      PixelId src = source.at(x, y) == kUnset ? fallback : source.at(x, y);
      const LdiPixel& sp = ldi.pixel(src);
      out.synthesis.push_back({{x, y}, sp.color, sp.disparity, src, replaces.at(x, y)});
    }
  }
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (ctx_at.at(x, y) != kNoPixel) out.context.push_back(ctx_at.at(x, y));
  return out;
}

InpaintRequest flatten_regions(const Ldi& ldi, const RegionPair& region, float edge_threshold) {
  InpaintRequest req;
  if (region.empty()) return req;

  int x0 = std::numeric_limits<int>::max(), y0 = x0, x1 = std::numeric_limits<int>::min(), y1 = x1;
  auto grow = [&](Pos p) {
    x0 = std::min(x0, p.x);
    y0 = std::min(y0, p.y);
    x1 = std::max(x1, p.x);
    y1 = std::max(y1, p.y);
  };
  for (const SynthesisSlot& s : region.synthesis) grow(s.pos);
  for (PixelId c : region.context) grow(ldi.pixel(c).pos);

  req.bbox = {x0, y0, x1 - x0 + 1, y1 - y0 + 1};
  const int w = req.bbox.width, h = req.bbox.height;
  req.color = RgbImage(w, h);
  req.disparity = DisparityMap(w, h, 0.f);
  req.edges = Mask(w, h, 0);
  req.synthesis = Mask(w, h, 0);
  req.excluded = Mask(w, h, 1);
  req.seed_color = RgbImage(w, h);
  req.seed_disparity = DisparityMap(w, h, 0.f);

  Plane<PixelId> ctx(w, h, kNoPixel);
  for (PixelId c : region.context) {
    const LdiPixel& p = ldi.pixel(c);
    int px = p.pos.x - x0, py = p.pos.y - y0;
    if (ctx.at(px, py) != kNoPixel) throw ConsistencyError("flatten_regions: two context pixels share a position");
    ctx.at(px, py) = c;
    req.color.at(px, py) = p.color;
    req.disparity.at(px, py) = p.disparity;
    req.excluded.at(px, py) = 0;
  }
  for (const SynthesisSlot& s : region.synthesis) {
    int px = s.pos.x - x0, py = s.pos.y - y0;
    if (ctx.at(px, py) != kNoPixel) throw ConsistencyError("flatten_regions: synthesis slot overlaps context");
    req.synthesis.at(px, py) = 1;
    req.excluded.at(px, py) = 0;
    req.seed_color.at(px, py) = s.seed_color;
    req.seed_disparity.at(px, py) = s.seed_disparity;
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (ctx.at(x, y) == kNoPixel) continue;
      float v = req.disparity.at(x, y);
      for (Pos q : {Pos{x - 1, y}, Pos{x + 1, y}, Pos{x, y - 1}, Pos{x, y + 1}}) {
        if (ctx.contains(q) && ctx.at(q) != kNoPixel && req.disparity.at(q) - v > edge_threshold) {
          req.edges.at(x, y) = 1;
          break;
        }
      }
    }
  }
  return req;
}

}  // namespace ldi3d
