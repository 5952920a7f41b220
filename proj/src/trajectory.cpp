#include "ldi3d/trajectory.hpp"

#include <cmath>
#include <numbers>
#include <nlohmann/json.hpp>

namespace ldi3d {

using json = nlohmann::ordered_json;

std::vector<Camera> Trajectory::cameras() const {
  std::vector<Camera> out;
  if (type == "poses") return poses;
  const int n = frames;
  for (int i = 0; i < n; ++i) {
    const double s = n > 1 ? double(i) / (n - 1) : 0.0;
    Vec3 t{0, 0, 0};
    if (type == "lateral") {
      if (n > 1) t[0] = -amplitude + 2 * amplitude * s;
    } else if (type == "dolly") {
      t[2] = amplitude * s;
    } else if (type == "orbit") {
      const double th = 2 * std::numbers::pi * i / n;
      t = {amplitude * std::cos(th), amplitude * std::sin(th), 0};
    }
    Camera c = base;
    c.translation = t;
    out.push_back(c);
  }
  return out;
}

Trajectory parse_trajectory(const std::string& text) {
  Trajectory t;
  try {
    json j = json::parse(text);
    t.type = j.value("type", std::string("lateral"));
    if (t.type != "lateral" && t.type != "dolly" && t.type != "orbit" && t.type != "poses")
      throw ConfigError("trajectory: unknown type '" + t.type + "'");
    t.width = j.at("width").get<int>();
    t.height = j.at("height").get<int>();
    if (t.width <= 0 || t.height <= 0) throw ConfigError("trajectory: width and height must be positive");
    t.amplitude = j.value("amplitude", 0.0);
    t.base = Camera::default_for(t.width, t.height);
    if (j.contains("intrinsics")) {
      const json& k = j["intrinsics"];
      t.base.fx = k.value("fx", t.base.fx);
      t.base.fy = k.value("fy", t.base.fy);
      t.base.cx = k.value("cx", t.base.cx);
      t.base.cy = k.value("cy", t.base.cy);
    }
    t.base.check();
    if (t.type == "poses") {
      for (const json& p : j.at("poses")) {
        Camera c = t.base;
        auto r = p.value("rotation", std::vector<double>(kIdentity3.begin(), kIdentity3.end()));
        auto tr = p.value("translation", std::vector<double>{0, 0, 0});
        if (r.size() != 9 || tr.size() != 3) throw ConfigError("trajectory: pose needs 9 rotation and 3 translation values");
        std::copy(r.begin(), r.end(), c.rotation.begin());
        std::copy(tr.begin(), tr.end(), c.translation.begin());
        c.check();
        t.poses.push_back(c);
      }
      t.frames = static_cast<int>(t.poses.size());
    } else {
      t.frames = j.at("frames").get<int>();
      if (t.frames < 0) throw ConfigError("trajectory: frames must be non-negative");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("trajectory: ") + e.what());
  }
  return t;
}

std::string trajectory_to_json(const Trajectory& t) {
  json j;
  j["type"] = t.type;
  j["frames"] = t.frames;
  j["amplitude"] = t.amplitude;
  j["width"] = t.width;
  j["height"] = t.height;
  j["intrinsics"] = {{"fx", t.base.fx}, {"fy", t.base.fy}, {"cx", t.base.cx}, {"cy", t.base.cy}};
  if (t.type == "poses") {
    j["poses"] = json::array();
    for (const Camera& c : t.poses) j["poses"].push_back({{"rotation", c.rotation}, {"translation", c.translation}});
  }
  return j.dump(2);
}

std::vector<RenderResult> render_trajectory(const TexturedMesh& mesh, const Trajectory& trajectory,
                                            const RenderOptions& options) {
  std::vector<RenderResult> frames;
  for (const Camera& c : trajectory.cameras())
    frames.push_back(render_view(mesh, c, trajectory.width, trajectory.height, options));
  return frames;
}

}  // namespace ldi3d
