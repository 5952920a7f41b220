#include "ldi3d/cut.hpp"

#include <algorithm>
#include <string>

namespace ldi3d {
namespace {

void sort_unique(std::vector<PixelId>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

SilhouettePair cut_edge(Ldi& ldi, const DepthEdge& edge) {
  SilhouettePair out;
  for (const CutPair& pair : edge.cut_pairs) {
    PixelId a = ldi.resolve(pair.a);
    PixelId b = ldi.resolve(pair.b);
    if (a == kNoPixel || b == kNoPixel)
      throw ConsistencyError("cut_edge: stale pixel id in edge " + std::to_string(edge.id));
    const LdiPixel& pa = ldi.pixel(a);
    const LdiPixel& pb = ldi.pixel(b);
    auto dir = std::find_if(kDirs.begin(), kDirs.end(), [&](Dir d) { return step(pa.pos, d) == pb.pos; });
    if (dir == kDirs.end()) throw ConsistencyError("cut_edge: pair is not lattice-adjacent");
    Dir d = *dir;

    bool a_near = pa.disparity >= pb.disparity;
    PixelId fg = a_near ? a : b;
    PixelId bg = a_near ? b : a;
    Dir toward = a_near ? opposite(d) : d;

    if (pa.link(d) == b) {
      ldi.unlink(a, d);
      out.cut_links.push_back({a, d, b});
    }
    out.foreground.push_back(fg);
    out.background.push_back(bg);
    SilhouetteBoundary sb{bg, toward, fg};
    if (std::find(out.boundary.begin(), out.boundary.end(), sb) == out.boundary.end()) out.boundary.push_back(sb);
  }
  sort_unique(out.foreground);
  sort_unique(out.background);
  return out;
}

void undo_cut(Ldi& ldi, const SilhouettePair& silhouettes) {
  for (const CutLink& c : silhouettes.cut_links) ldi.link(c.from, c.dir, c.to);
}

}  // namespace ldi3d
