#include "ldi3d/render.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace ldi3d {
namespace {

constexpr double kSub = 256.0;
constexpr double kMaxCoord = 1e6;

struct ScreenVertex {
  std::int64_t x, y;  // fixed point
  double inv_z;
  double r, g, b;     // divided by z
};

// Halves round up; the bias absorbs projection round-off so that a plane
// shifted by exactly half a pixel moves uniformly.
long nearest_pixel(double u) { return static_cast<long>(std::floor(u + 0.5 + 1e-6)); }

bool owns(std::int64_t dx, std::int64_t dy) { return dy > 0 || (dy == 0 && dx < 0); }

// (b - a) x (p - a) in fixed point units squared.
std::int64_t edge_fn(const ScreenVertex& a, const ScreenVertex& b, std::int64_t px, std::int64_t py) {
  return (b.x - a.x) * (py - a.y) - (b.y - a.y) * (px - a.x);
}

struct Target {
  int width, height;
  RgbImage* color;
  Plane<float>* depth;
  Mask* coverage;
  Plane<double>* zbuf;
};

void raster_triangle(ScreenVertex v0, ScreenVertex v1, ScreenVertex v2, const Target& t, int row0, int row1) {
  std::int64_t area = edge_fn(v0, v1, v2.x, v2.y);
  if (area == 0) return;
  if (area < 0) {
    std::swap(v1, v2);
    area = -area;
  }
  const std::int64_t sub = static_cast<std::int64_t>(kSub);
  auto floor_div = [](std::int64_t a, std::int64_t b) { return a >= 0 ? a / b : -((-a + b - 1) / b); };
  auto ceil_div = [&](std::int64_t a, std::int64_t b) { return -floor_div(-a, b); };
  std::int64_t minx = std::min({v0.x, v1.x, v2.x}), maxx = std::max({v0.x, v1.x, v2.x});
  std::int64_t miny = std::min({v0.y, v1.y, v2.y}), maxy = std::max({v0.y, v1.y, v2.y});
  int x0 = static_cast<int>(std::max<std::int64_t>(0, ceil_div(minx, sub)));
  int x1 = static_cast<int>(std::min<std::int64_t>(t.width - 1, floor_div(maxx, sub)));
  int y0 = static_cast<int>(std::max<std::int64_t>(row0, ceil_div(miny, sub)));
  int y1 = static_cast<int>(std::min<std::int64_t>(row1 - 1, floor_div(maxy, sub)));
  if (x0 > x1 || y0 > y1) return;

  const ScreenVertex* v[3] = {&v0, &v1, &v2};
  bool own[3];
  for (int i = 0; i < 3; ++i) {
    const ScreenVertex& a = *v[(i + 1) % 3];
    const ScreenVertex& b = *v[(i + 2) % 3];
    own[i] = owns(b.x - a.x, b.y - a.y);
  }
  for (int y = y0; y <= y1; ++y) {
    const std::int64_t py = y * sub;
    for (int x = x0; x <= x1; ++x) {
      const std::int64_t px = x * sub;
      std::int64_t w[3];
      bool inside = true;
      for (int i = 0; i < 3 && inside; ++i) {
        w[i] = edge_fn(*v[(i + 1) % 3], *v[(i + 2) % 3], px, py);
        inside = w[i] > 0 || (w[i] == 0 && own[i]);
      }
      if (!inside) continue;
      const double l0 = double(w[0]) / area, l1 = double(w[1]) / area, l2 = double(w[2]) / area;
      const double inv_z = l0 * v0.inv_z + l1 * v1.inv_z + l2 * v2.inv_z;
      const double z = 1.0 / inv_z;
      double& zb = t.zbuf->at(x, y);
      if (!(z < zb)) continue;
      zb = z;
      auto channel = [&](double ScreenVertex::*m) {
        double c = (l0 * (v0.*m) + l1 * (v1.*m) + l2 * (v2.*m)) * z;
        return static_cast<std::uint8_t>(std::clamp(std::lround(c), 0L, 255L));
      };
      t.color->at(x, y) = {channel(&ScreenVertex::r), channel(&ScreenVertex::g), channel(&ScreenVertex::b)};
      t.depth->at(x, y) = static_cast<float>(z);
      t.coverage->at(x, y) = 1;
    }
  }
}

}  // namespace

RenderResult render_view(const TexturedMesh& mesh, const Camera& camera, int width, int height,
                         const RenderOptions& options) {
  RenderResult out{RgbImage(width, height), Plane<float>(width, height, std::numeric_limits<float>::infinity()),
                   Mask(width, height, 0)};
  if (width == 0 || height == 0) return out;
  Plane<double> zbuf(width, height, std::numeric_limits<double>::infinity());

  std::vector<ScreenVertex> sv(mesh.vertices.size());
  std::vector<std::uint8_t> usable(mesh.vertices.size(), 0);
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    const auto& mv = mesh.vertices[i];
    Vec3 c = camera.to_camera({mv.position[0], mv.position[1], mv.position[2]});
    if (!(c[2] > options.near)) continue;
    double u = camera.fx * c[0] / c[2] + camera.cx;
    double v = camera.fy * c[1] / c[2] + camera.cy;
    if (!(std::abs(u) <= kMaxCoord && std::abs(v) <= kMaxCoord)) continue;
    usable[i] = 1;
    sv[i] = {std::llround(u * kSub), std::llround(v * kSub), 1.0 / c[2], mv.color.r / c[2], mv.color.g / c[2],
             mv.color.b / c[2]};
  }

  Target target{width, height, &out.color, &out.depth, &out.coverage, &zbuf};
  auto band = [&](int row0, int row1) {
    for (const auto& tri : mesh.triangles) {
      if (!usable[tri[0]] || !usable[tri[1]] || !usable[tri[2]]) continue;
      raster_triangle(sv[tri[0]], sv[tri[1]], sv[tri[2]], target, row0, row1);
    }
  };
  int threads = options.threads > 0 ? options.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, std::max(1, height / 16));
  if (threads == 1 || mesh.triangles.size() < 4096) {
    band(0, height);
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(band, height * i / threads, height * (i + 1) / threads);
    for (auto& th : pool) th.join();
  }
  return out;
}

WarpResult naive_warp(const RgbImage& color, const DisparityMap& disparity, const Camera& source,
                      const Camera& destination, const DepthModel& depth) {
  if (color.width != disparity.width || color.height != disparity.height)
    throw InputError("color and disparity sizes differ");
  const int w = color.width, h = color.height;
  WarpResult out{RgbImage(w, h), Mask(w, h, 1)};
  Plane<double> zbuf(w, h, std::numeric_limits<double>::infinity());
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      Vec3 world = source.to_world(source.unproject(x, y, depth.depth(disparity.at(x, y))));
      Vec3 c = destination.to_camera(world);
      if (!(c[2] > 0)) continue;
      double u = destination.fx * c[0] / c[2] + destination.cx;
      double v = destination.fy * c[1] / c[2] + destination.cy;
      if (!(std::abs(u) <= kMaxCoord && std::abs(v) <= kMaxCoord)) continue;
      const long tx = nearest_pixel(u), ty = nearest_pixel(v);
      if (tx < 0 || ty < 0 || tx >= w || ty >= h) continue;
      if (!(c[2] < zbuf.at(tx, ty))) continue;
      zbuf.at(tx, ty) = c[2];
      out.color.at(tx, ty) = color.at(x, y);
      out.holes.at(tx, ty) = 0;
    }
  return out;
}

long long count_holes(const Mask& covered, int border) {
  long long n = 0;
  for (int y = border; y < covered.height - border; ++y)
    for (int x = border; x < covered.width - border; ++x)
      if (!covered.at(x, y)) ++n;
  return n;
}

Mask invert(const Mask& m) {
  Mask out(m.width, m.height);
  for (std::size_t i = 0; i < m.size(); ++i) out.data[i] = m.data[i] ? 0 : 1;
  return out;
}

}  // namespace ldi3d
