#include "ldi3d/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace ldi3d {

DisparityMap normalize_disparity(const Plane<float>& input, DepthMode mode) {
  DisparityMap out(input.width, input.height);
  std::vector<double> disp(input.size());
  for (std::size_t i = 0; i < input.size(); ++i) {
    double v = input.data[i];
    if (!std::isfinite(v)) throw InputError("non-finite depth/disparity value");
    if (mode == DepthMode::Depth) {
      if (v <= 0) throw InputError("non-positive depth value");
      v = 1.0 / v;
    }
    disp[i] = v;
  }
  if (disp.empty()) return out;
  auto [lo, hi] = std::minmax_element(disp.begin(), disp.end());
  double min = *lo, max = *hi;
  for (std::size_t i = 0; i < disp.size(); ++i)
    out.data[i] = max > min ? static_cast<float>((disp[i] - min) / (max - min)) : 0.5f;
  return out;
}

DisparityMap bilateral_median_filter(const DisparityMap& d, const FilterParams& params) {
  if (params.window < 1 || params.window % 2 == 0) throw ConfigError("filter window must be odd and positive");
  if (params.sigma_spatial <= 0 || params.sigma_intensity <= 0) throw ConfigError("filter sigmas must be positive");
  const int r = params.window / 2;
  const int w = d.width, h = d.height;

  Mask reliable(w, h, 1);
  if (params.gate_threshold > 0) {
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        float v = d.at(x, y);
        auto jump = [&](int nx, int ny) {
          return d.contains(nx, ny) && std::abs(d.at(nx, ny) - v) > params.gate_threshold;
        };
        if (jump(x - 1, y) || jump(x + 1, y) || jump(x, y - 1) || jump(x, y + 1)) reliable.at(x, y) = 0;
      }
  }

  std::vector<double> spatial(static_cast<std::size_t>(params.window) * params.window);
  const double ss = 2 * params.sigma_spatial * params.sigma_spatial;
  const double si = 2 * params.sigma_intensity * params.sigma_intensity;
  for (int dy = -r; dy <= r; ++dy)
    for (int dx = -r; dx <= r; ++dx) spatial[(dy + r) * params.window + (dx + r)] = std::exp(-(dx * dx + dy * dy) / ss);

  DisparityMap out(w, h);
  std::vector<std::pair<float, double>> samples;
  samples.reserve(spatial.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const float center = d.at(x, y);
      samples.clear();
      for (int qy = std::max(0, y - r); qy <= std::min(h - 1, y + r); ++qy) {
        for (int qx = std::max(0, x - r); qx <= std::min(w - 1, x + r); ++qx) {
          if (!reliable.at(qx, qy)) continue;
          float v = d.at(qx, qy);
          double diff = static_cast<double>(v) - center;
          double wgt = spatial[(qy - y + r) * params.window + (qx - x + r)] * std::exp(-diff * diff / si);
          samples.emplace_back(v, wgt);
        }
      }
      std::stable_sort(samples.begin(), samples.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      double total = 0;
      for (const auto& s : samples) total += s.second;
      float result = center;
      if (total > 0) {
        double cum = 0;
        for (const auto& s : samples) {
          cum += s.second;
          if (2 * cum >= total) {
            result = s.first;
            break;
          }
        }
      }
      out.at(x, y) = result;
    }
  }
  return out;
}

Discontinuities detect_discontinuities(const DisparityMap& d, float threshold) {
  if (!(threshold > 0)) throw ConfigError("discontinuity threshold must be positive");
  Discontinuities out{Mask(d.width, d.height, 0), {}};
  for (int y = 0; y < d.height; ++y) {
    for (int x = 0; x < d.width; ++x) {
      for (Pos q : {Pos{x + 1, y}, Pos{x, y + 1}}) {
        if (!d.contains(q)) continue;
        float a = d.at(x, y), b = d.at(q);
        if (std::abs(a - b) <= threshold) continue;
        Pos p{x, y};
        SitePair pair = a > b ? SitePair{p, q} : SitePair{q, p};
        out.sites.at(pair.far) = 1;
        out.pairs.push_back(pair);
      }
    }
  }
  return out;
}

namespace {

constexpr int kNbr8[8][2] = {{-1, -1}, {0, -1}, {1, -1}, {-1, 0}, {1, 0}, {-1, 1}, {0, 1}, {1, 1}};

// Picks the pixels for a site pair, preferring two that are linked to each other.
CutPair resolve_pair(const Ldi& ldi, const SitePair& sp) {
  auto near_ids = ldi.at(sp.near);
  auto far_ids = ldi.at(sp.far);
  if (near_ids.empty() || far_ids.empty()) return {};
  auto dir = std::find_if(kDirs.begin(), kDirs.end(), [&](Dir d) { return step(sp.near, d) == sp.far; });
  for (PixelId n : near_ids)
    for (PixelId f : far_ids)
      if (ldi.pixel(n).link(*dir) == f) return {n, f};
  return {near_ids.front(), far_ids.front()};
}

}  // namespace

std::vector<DepthEdge> link_depth_edges(const Discontinuities& disc, const Ldi& ldi, int min_edge_length) {
  const Mask& m = disc.sites;
  const int w = m.width, h = m.height;
  if (w != ldi.width() || h != ldi.height()) throw InputError("discontinuity map does not match LDI");

  auto marked = [&](int x, int y) { return m.contains(x, y) && m.at(x, y) != 0; };
  Mask junction(w, h, 0);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (!marked(x, y)) continue;
      int n = 0;
      for (auto& o : kNbr8) n += marked(x + o[0], y + o[1]) ? 1 : 0;
      junction.at(x, y) = n >= 3 ? 1 : 0;
    }

  // Components of non-junction sites, discovered in scan order.
  constexpr int kUnlabeled = -1;
  Plane<int> label(w, h, kUnlabeled);
  std::vector<std::vector<Pos>> comps;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!marked(x, y) || junction.at(x, y) || label.at(x, y) != kUnlabeled) continue;
      int id = static_cast<int>(comps.size());
      std::vector<Pos> sites;
      std::deque<Pos> queue{{x, y}};
      label.at(x, y) = id;
      while (!queue.empty()) {
        Pos p = queue.front();
        queue.pop_front();
        sites.push_back(p);
        for (auto& o : kNbr8) {
          Pos q{p.x + o[0], p.y + o[1]};
          if (marked(q.x, q.y) && !junction.at(q) && label.at(q) == kUnlabeled) {
            label.at(q) = id;
            queue.push_back(q);
          }
        }
      }
      comps.push_back(std::move(sites));
    }
  }

  // Drop short components and renumber the survivors.
  std::vector<int> remap(comps.size(), kUnlabeled);
  int survivors = 0;
  for (std::size_t i = 0; i < comps.size(); ++i)
    if (static_cast<int>(comps[i].size()) >= min_edge_length) remap[i] = survivors++;
  for (int& l : label.data)
    if (l != kUnlabeled) l = remap[l];

  // Junction sites join the smallest-id adjacent edge, ring by ring.
  for (bool changed = true; changed;) {
    changed = false;
    Plane<int> next = label;
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) {
        if (!junction.at(x, y) || label.at(x, y) != kUnlabeled) continue;
        int best = kUnlabeled;
        for (auto& o : kNbr8) {
          int nx = x + o[0], ny = y + o[1];
          if (!label.contains(nx, ny)) continue;
          int l = label.at(nx, ny);
          if (l != kUnlabeled && (best == kUnlabeled || l < best)) best = l;
        }
        if (best != kUnlabeled) {
          next.at(x, y) = best;
          changed = true;
        }
      }
    label = std::move(next);
  }

  std::vector<DepthEdge> edges(survivors);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (label.at(x, y) != kUnlabeled) edges[label.at(x, y)].sites.push_back({x, y});
  for (const SitePair& sp : disc.pairs) {
    int l = label.at(sp.far);
    if (l == kUnlabeled) continue;
    CutPair cp = resolve_pair(ldi, sp);
    if (cp.a != kNoPixel) edges[l].cut_pairs.push_back(cp);
  }
  std::stable_sort(edges.begin(), edges.end(),
                   [](const DepthEdge& a, const DepthEdge& b) { return scan_less(a.sites.front(), b.sites.front()); });
  for (std::size_t i = 0; i < edges.size(); ++i) edges[i].id = static_cast<int>(i);
  return edges;
}

int scaled_edge_length(int base_length, int width, int height) {
  int long_side = std::max(width, height);
  return std::max(1, static_cast<int>(std::lround(base_length * long_side / 1024.0)));
}

}  // namespace ldi3d
