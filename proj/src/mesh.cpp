#include "ldi3d/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace ldi3d {

Camera Camera::default_for(int width, int height) {
  Camera c;
  c.fx = c.fy = 0.8 * std::max(width, height);
  c.cx = (width - 1) / 2.0;
  c.cy = (height - 1) / 2.0;
  return c;
}

Camera Camera::translated(const Vec3& t) const {
  Camera c = *this;
  for (int i = 0; i < 3; ++i) c.translation[i] += t[i];
  return c;
}

void Camera::check() const {
  if (!(fx > 0) || !(fy > 0)) throw ConfigError("camera focal lengths must be positive");
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double dot = 0;
      for (int k = 0; k < 3; ++k) dot += rotation[3 * k + i] * rotation[3 * k + j];
      if (std::abs(dot - (i == j ? 1.0 : 0.0)) > 1e-6) throw ConfigError("camera rotation is not orthonormal");
    }
}

Vec3 Camera::to_camera(const Vec3& w) const {
  Vec3 d{w[0] - translation[0], w[1] - translation[1], w[2] - translation[2]};
  Vec3 out{};
  for (int i = 0; i < 3; ++i) out[i] = rotation[i] * d[0] + rotation[3 + i] * d[1] + rotation[6 + i] * d[2];
  return out;
}

Vec3 Camera::to_world(const Vec3& c) const {
  Vec3 out{};
  for (int i = 0; i < 3; ++i)
    out[i] = rotation[3 * i] * c[0] + rotation[3 * i + 1] * c[1] + rotation[3 * i + 2] * c[2] + translation[i];
  return out;
}

Vec3 Camera::unproject(double u, double v, double z) const { return {(u - cx) * z / fx, (v - cy) * z / fy, z}; }

void DepthModel::check() const {
  if (!(a > 0)) throw ConfigError("disparity-to-depth coefficient a must be positive");
  if (!(b >= 0)) throw ConfigError("disparity-to-depth coefficient b must be non-negative");
}

TexturedMesh ldi_to_mesh(const Ldi& ldi, const Camera& camera, const DepthModel& depth) {
  TexturedMesh mesh;
  const auto ids = ldi.pixel_ids();
  std::unordered_map<PixelId, std::uint32_t> vertex_of;
  vertex_of.reserve(ids.size());
  mesh.vertices.reserve(ids.size());
  for (PixelId id : ids) {
    const LdiPixel& p = ldi.pixel(id);
    Vec3 w = camera.to_world(camera.unproject(p.pos.x, p.pos.y, depth.depth(p.disparity)));
    vertex_of.emplace(id, static_cast<std::uint32_t>(mesh.vertices.size()));
    mesh.vertices.push_back({{float(w[0]), float(w[1]), float(w[2])}, p.color});
  }
  for (PixelId tl : ids) {
    const LdiPixel& p = ldi.pixel(tl);
    PixelId tr = p.link(Dir::Right), bl = p.link(Dir::Down);
    if (tr == kNoPixel || bl == kNoPixel) continue;
    PixelId br = ldi.pixel(tr).link(Dir::Down);
    if (br == kNoPixel || ldi.pixel(bl).link(Dir::Right) != br) continue;
    std::uint32_t a = vertex_of[tl], b = vertex_of[tr], c = vertex_of[br], d = vertex_of[bl];
    mesh.triangles.push_back({a, b, c});
    mesh.triangles.push_back({a, c, d});
  }
  return mesh;
}

}  // namespace ldi3d
