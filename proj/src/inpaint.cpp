#include "ldi3d/inpaint.hpp"

#include <algorithm>
#include <cmath>

namespace ldi3d {
namespace {

template <class T>
void check_shape(const Plane<T>& p, const InpaintRequest& req, const std::string& stage) {
  if (p.width != req.width() || p.height != req.height()) throw BackendError(stage, "output plane has wrong size");
}

template <class F>
auto run_stage(const std::string& stage, F&& f) {
  try {
    return f();
  } catch (const BackendError&) {
    throw;
  } catch (const std::exception& e) {
    throw BackendError(stage, e.what());
  }
}

}  // namespace

InpaintResult inpaint_stage_order(const InpaintRequest& req, InpaintBackend& backend) {
  InpaintResult res;
  if (std::none_of(req.synthesis.data.begin(), req.synthesis.data.end(), [](std::uint8_t v) { return v != 0; }))
    return res;

  res.edges = run_stage("edge", [&] { return backend.inpaint_edges(req); });
  check_shape(res.edges, req, "edge");
  Mask edges(req.width(), req.height(), 0);
  for (std::size_t i = 0; i < edges.size(); ++i) edges.data[i] = (req.synthesis.data[i] && res.edges.data[i]) ? 1 : 0;
  res.edges = edges;

  res.color = run_stage("color", [&] { return backend.inpaint_color(req, res.edges); });
  check_shape(res.color, req, "color");
  res.disparity = run_stage("depth", [&] { return backend.inpaint_depth(req, res.edges); });
  check_shape(res.disparity, req, "depth");
  for (std::size_t i = 0; i < res.disparity.size(); ++i) {
    if (!req.synthesis.data[i]) continue;
    float v = res.disparity.data[i];
    if (!std::isfinite(v) || v < 0.f || v > 1.f) throw BackendError("depth", "inpainted disparity outside [0,1]");
  }
  return res;
}

Mask continue_edges(const InpaintRequest& req) {
  const int w = req.width(), h = req.height();
  Mask out(w, h, 0);
  auto ctx_edge = [&](int x, int y) { return req.synthesis.contains(x, y) && req.is_context(x, y) && req.edges.at(x, y); };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!ctx_edge(x, y)) continue;
      int count = 0, px = 0, py = 0;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx)
          if ((dx || dy) && ctx_edge(x + dx, y + dy)) {
            ++count;
            px = x + dx;
            py = y + dy;
          }
      if (count != 1) continue;
      const int sx = x - px, sy = y - py;
      for (int cx = x + sx, cy = y + sy;
           out.contains(cx, cy) && req.synthesis.at(cx, cy) && !out.at(cx, cy) && !ctx_edge(cx, cy);
           cx += sx, cy += sy)
        out.at(cx, cy) = 1;
    }
  }
  return out;
}

Mask combined_edges(const InpaintRequest& req, const Mask& inpainted) {
  Mask out(req.width(), req.height(), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (req.excluded.data[i]) continue;
    out.data[i] = req.synthesis.data[i] ? (inpainted.data[i] ? 1 : 0) : (req.edges.data[i] ? 1 : 0);
  }
  return out;
}

Mask DiffusionBackend::inpaint_edges(const InpaintRequest& req) { return continue_edges(req); }

RgbImage DiffusionBackend::inpaint_color(const InpaintRequest& req, const Mask& edges) {
  LaplaceSystem system(req.synthesis, req.excluded, combined_edges(req, edges));
  RgbImage out = req.color;
  const int w = req.width(), h = req.height();
  for (int ch = 0; ch < 3; ++ch) {
    auto get = [ch](const Rgb8& c) { return ch == 0 ? c.r : ch == 1 ? c.g : c.b; };
    Plane<float> values(w, h), seed(w, h);
    for (std::size_t i = 0; i < values.size(); ++i) {
      values.data[i] = req.excluded.data[i] ? 0.f : get(req.color.data[i]) / 255.f;
      seed.data[i] = get(req.seed_color.data[i]) / 255.f;
    }
    Plane<float> solved = system.solve(values, seed, params_);
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (!req.synthesis.data[i]) continue;
      auto v = static_cast<std::uint8_t>(std::clamp(std::lround(solved.data[i] * 255.0), 0L, 255L));
      (ch == 0 ? out.data[i].r : ch == 1 ? out.data[i].g : out.data[i].b) = v;
    }
  }
  return out;
}

DisparityMap DiffusionBackend::inpaint_depth(const InpaintRequest& req, const Mask& edges) {
  Plane<float> values = req.disparity;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (req.excluded.data[i]) values.data[i] = 0.f;
  Plane<float> solved = diffusion_inpaint(values, req.synthesis, req.excluded, combined_edges(req, edges),
                                          req.seed_disparity, params_);
  for (float& v : solved.data) v = std::clamp(v, 0.f, 1.f);
  return solved;
}

}  // namespace ldi3d
