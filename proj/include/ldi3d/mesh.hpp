#pragma once

#include <array>
#include <vector>

#include "ldi3d/ldi.hpp"

namespace ldi3d {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<double, 9>;  // row-major

inline constexpr Mat3 kIdentity3{1, 0, 0, 0, 1, 0, 0, 0, 1};

/// Pinhole camera. The pose maps camera coordinates to world coordinates:
/// X_world = rotation * X_cam + translation. +z looks forward, +y is down.
struct Camera {
  double fx = 1, fy = 1, cx = 0, cy = 0;
  Mat3 rotation = kIdentity3;
  Vec3 translation{0, 0, 0};

  /// fx = fy = 0.8 * max(w, h), principal point at the image center.
  static Camera default_for(int width, int height);

  Camera translated(const Vec3& t) const;
  /// Throws ConfigError unless fx, fy > 0 and the rotation is orthonormal within 1e-6.
  void check() const;

  Vec3 to_camera(const Vec3& world) const;
  Vec3 to_world(const Vec3& cam) const;
  /// Camera-space point seen at image position (u, v) with depth z.
  Vec3 unproject(double u, double v, double z) const;
};

/// depth = 1 / (a * disparity + b)
struct DepthModel {
  double a = 0.9;
  double b = 0.1;
  double depth(double disparity) const { return 1.0 / (a * disparity + b); }
  void check() const;
};

struct MeshVertex {
  std::array<float, 3> position;
  Rgb8 color;
};

struct TexturedMesh {
  std::vector<MeshVertex> vertices;
  std::vector<std::array<std::uint32_t, 3>> triangles;
};

/// One vertex per live pixel (in id order), unprojected through `camera`.
/// Every 2x2 cell whose four pixels are linked around the cell yields the
/// triangles (tl, tr, br) and (tl, br, bl).
TexturedMesh ldi_to_mesh(const Ldi& ldi, const Camera& camera, const DepthModel& depth = {});

}  // namespace ldi3d
