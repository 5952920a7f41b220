#pragma once

#include <string>
#include <vector>

#include "ldi3d/render.hpp"

namespace ldi3d {

/// Camera path description, read from JSON:
///
///   {"type": "lateral" | "dolly" | "orbit" | "poses",
///    "frames": 30, "amplitude": 0.05, "width": 128, "height": 128,
///    "intrinsics": {"fx": .., "fy": .., "cx": .., "cy": ..},      optional
///    "poses": [{"rotation": [9 numbers, row-major],
///               "translation": [x, y, z]}, ...]}                  "poses" only
///
/// Frame i of N (poses are camera-to-world, mesh frame, identity rotation):
///   lateral  t = (-A + 2A i/(N-1), 0, 0)   (0 when N = 1)
///   dolly    t = (0, 0, A i/(N-1))         (0 when N = 1)
///   orbit    t = (A cos th, A sin th, 0),  th = 2 pi i / N
/// Missing intrinsics default to Camera::default_for(width, height).
struct Trajectory {
  std::string type = "lateral";
  int frames = 0;
  double amplitude = 0;
  int width = 0, height = 0;
  Camera base;
  std::vector<Camera> poses;  // explicit poses for type "poses"

  std::vector<Camera> cameras() const;
};

/// Throws ConfigError on malformed specs.
Trajectory parse_trajectory(const std::string& json_text);
std::string trajectory_to_json(const Trajectory& t);

std::vector<RenderResult> render_trajectory(const TexturedMesh& mesh, const Trajectory& trajectory,
                                            const RenderOptions& options = {});

}  // namespace ldi3d
