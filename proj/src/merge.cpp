#include "ldi3d/merge.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>

namespace ldi3d {

SlotValues gather_slot_values(const RegionPair& region, const InpaintRequest& req, const InpaintResult& res) {
  SlotValues out;
  out.values.reserve(region.synthesis.size());
  out.edges.reserve(region.synthesis.size());
  for (const SynthesisSlot& s : region.synthesis) {
    int x = s.pos.x - req.bbox.x, y = s.pos.y - req.bbox.y;
    if (!req.synthesis.contains(x, y) || !req.synthesis.at(x, y))
      throw ConsistencyError("gather_slot_values: slot outside synthesis mask");
    out.values.push_back({res.color.at(x, y), res.disparity.at(x, y)});
    out.edges.push_back(res.edges.at(x, y));
  }
  return out;
}

std::vector<DepthEdge> merge_synthesized(Ldi& ldi, const RegionPair& region, const SlotValues& slots, float threshold) {
  const std::size_t n = region.synthesis.size();
  if (slots.values.size() != n || slots.edges.size() != n) throw InputError("merge: one value per synthesis slot required");
  if (n == 0) return {};
  for (const SlotValue& v : slots.values)
    if (!std::isfinite(v.disparity)) throw InputError("merge: non-finite inpainted disparity");

  const std::size_t old_bound = ldi.id_bound();
  std::vector<std::uint8_t> in_ctx(old_bound, 0);
  for (PixelId c : region.context) in_ctx[c] = 1;

  // Existing pixel at q within threshold of disparity v: nearest in
  // disparity, then smallest id.
  auto closest_layer = [&](Pos q, float v) {
    PixelId best = kNoPixel;
    float best_d = 0.f;
    for (PixelId cand : ldi.at(q)) {
      if (cand >= old_bound) continue;
      float d = std::abs(ldi.pixel(cand).disparity - v);
      if (d > threshold) continue;
      if (best == kNoPixel || d < best_d || (d == best_d && cand < best)) {
        best = cand;
        best_d = d;
      }
    }
    return best;
  };

  Plane<PixelId> new_at(ldi.width(), ldi.height(), kNoPixel);
  std::vector<PixelId> ids(n);
  std::vector<std::array<PixelId, 4>> inherited(n, {kNoPixel, kNoPixel, kNoPixel, kNoPixel});
  for (std::size_t i = 0; i < n; ++i) {
    const SynthesisSlot& s = region.synthesis[i];
    if (new_at.at(s.pos) != kNoPixel) throw ConsistencyError("merge: duplicate synthesis position");
    if (s.replaces == kNoPixel) {
      // The layer is already present here; the slot joins the existing pixel.
      if (PixelId same = closest_layer(s.pos, slots.values[i].disparity); same != kNoPixel) {
        ids[i] = same;
        new_at.at(s.pos) = same;
        continue;
      }
    }
    ids[i] = ldi.add_pixel(s.pos, slots.values[i].color, slots.values[i].disparity);
    new_at.at(s.pos) = ids[i];
    if (s.replaces != kNoPixel) {
      if (!ldi.alive(s.replaces)) throw ConsistencyError("merge: replaced pixel is gone");
      inherited[i] = ldi.pixel(s.replaces).links;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (region.synthesis[i].replaces != kNoPixel) ldi.remove_pixel(region.synthesis[i].replaces, ids[i]);

  std::vector<std::uint8_t> on_edge(ldi.id_bound(), 0);
  for (std::size_t i = 0; i < n; ++i) on_edge[ids[i]] = slots.edges[i] ? 1 : on_edge[ids[i]];
  auto edge_flag = [&](PixelId p) { return p < on_edge.size() && on_edge[p]; };
  auto barrier = [&](PixelId a, PixelId b) {
    return (edge_flag(a) || edge_flag(b)) && std::abs(ldi.pixel(a).disparity - ldi.pixel(b).disparity) > threshold;
  };
  std::vector<CutPair> refused;
  auto connect = [&](PixelId a, Dir d, PixelId b) {
    if (ldi.pixel(a).has_link(d) || ldi.pixel(b).has_link(opposite(d))) return;
    if (barrier(a, b))
      refused.push_back({a, b});
    else
      ldi.link(a, d, b);
  };

  for (std::size_t i = 0; i < n; ++i) {
    for (Dir d : {Dir::Right, Dir::Down}) {
      Pos q = step(region.synthesis[i].pos, d);
      if (!new_at.contains(q) || new_at.at(q) == kNoPixel) continue;
      connect(ids[i], d, new_at.at(q));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const PixelId me = ids[i];
    for (Dir d : kDirs) {
      Pos q = step(region.synthesis[i].pos, d);
      if (!new_at.contains(q) || new_at.at(q) != kNoPixel) continue;
      PixelId c = kNoPixel;
      PixelId inh = inherited[i][static_cast<int>(d)];
      if (inh != kNoPixel && ldi.alive(inh)) {
        c = inh;
      } else {
        for (PixelId cand : ldi.at(q))
          if (cand < old_bound && in_ctx[cand]) c = cand;
        if (c == kNoPixel) c = closest_layer(q, ldi.pixel(me).disparity);
      }
      if (c != kNoPixel) connect(me, d, c);
    }
  }
  if (refused.empty()) return {};

  // Group refused pairs by 8-connected components of their edge sites.
  Plane<int> label(ldi.width(), ldi.height(), -1);
  Mask site(ldi.width(), ldi.height(), 0);
  auto site_of = [&](const CutPair& p) { return ldi.pixel(edge_flag(p.a) ? p.a : p.b).pos; };
  for (const CutPair& p : refused) {
    if (edge_flag(p.a)) site.at(ldi.pixel(p.a).pos) = 1;
    if (edge_flag(p.b)) site.at(ldi.pixel(p.b).pos) = 1;
  }
  std::vector<DepthEdge> edges;
  for (int y = 0; y < site.height; ++y) {
    for (int x = 0; x < site.width; ++x) {
      if (!site.at(x, y) || label.at(x, y) >= 0) continue;
      DepthEdge e;
      e.id = static_cast<int>(edges.size());
      std::deque<Pos> queue{{x, y}};
      label.at(x, y) = e.id;
      while (!queue.empty()) {
        Pos p = queue.front();
        queue.pop_front();
        e.sites.push_back(p);
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            Pos q{p.x + dx, p.y + dy};
            if (site.contains(q) && site.at(q) && label.at(q) < 0) {
              label.at(q) = e.id;
              queue.push_back(q);
            }
          }
      }
      std::sort(e.sites.begin(), e.sites.end(), scan_less);
      edges.push_back(std::move(e));
    }
  }
  for (const CutPair& p : refused) edges[label.at(site_of(p))].cut_pairs.push_back(p);
  return edges;
}

}  // namespace ldi3d
