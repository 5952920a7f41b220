#include "ldi3d/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace ldi3d {
namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& v) {
  T out{};
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size()) throw ConfigError(key + ": cannot parse '" + v + "'");
  if constexpr (std::is_floating_point_v<T>)
    if (!std::isfinite(out)) throw ConfigError(key + ": value must be finite");
  return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(key + ": expected a boolean, got '" + v + "'");
}

int scale_len(int base, int w, int h) {
  return std::max(1, static_cast<int>(std::lround(base * std::max(w, h) / 1024.0)));
}

}  // namespace

void PipelineConfig::validate() const {
  auto require = [](bool ok, const char* msg) {
    if (!ok) throw ConfigError(msg);
  };
  require(filter.window >= 1 && filter.window % 2 == 1, "filter_window must be a positive odd number");
  require(filter.sigma_spatial > 0, "filter_sigma_spatial must be positive");
  require(filter.sigma_intensity > 0, "filter_sigma_intensity must be positive");
  require(filter_passes >= 0, "filter_passes must be non-negative");
  require(threshold > 0 && threshold < 1, "threshold must lie in (0, 1)");
  require(min_edge_length >= 1, "min_edge_length must be at least 1");
  require(regions.n_syn >= 0, "n_syn must be non-negative");
  require(regions.n_ctx >= 0, "n_ctx must be non-negative");
  require(regions.dilate >= 0, "dilate must be non-negative");
  require(regions.threshold > 0, "region threshold must be positive");
  require(depth_cap >= 1, "depth_cap must be at least 1");
  require(backend == "diffusion" || backend == "external", "backend must be 'diffusion' or 'external'");
  require(backend != "external" || !external_command.empty(), "external backend needs external_command");
  require(diffusion.tol > 0, "diffusion_tol must be positive");
  require(diffusion.max_iter >= 1, "diffusion_max_iter must be at least 1");
  require(fx >= 0 && fy >= 0, "fx and fy must be non-negative (0 selects the default)");
  depth.check();
}

Camera PipelineConfig::camera_for(int width, int height) const {
  Camera c = Camera::default_for(width, height);
  if (fx > 0) c.fx = fx;
  if (fy > 0) c.fy = fy;
  if (cx) c.cx = *cx;
  if (cy) c.cy = *cy;
  return c;
}

int PipelineConfig::edge_length_for(int width, int height) const {
  return scale_to_image ? scale_len(min_edge_length, width, height) : min_edge_length;
}

RegionParams PipelineConfig::regions_for(int width, int height) const {
  RegionParams r = regions;
  r.threshold = threshold;
  if (scale_to_image) {
    r.n_syn = scale_len(regions.n_syn, width, height);
    r.n_ctx = scale_len(regions.n_ctx, width, height);
    r.dilate = regions.dilate == 0 ? 0 : scale_len(regions.dilate, width, height);
  }
  return r;
}

PipelineConfig parse_config(const std::string& text) {
  PipelineConfig c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq)), v = trim(line.substr(eq + 1));
    if (key == "depth_mode") {
      if (v == "disparity") c.depth_mode = DepthMode::Disparity;
      else if (v == "depth") c.depth_mode = DepthMode::Depth;
      else throw ConfigError("depth_mode must be 'depth' or 'disparity'");
    } else if (key == "filter_window") c.filter.window = parse_number<int>(key, v);
    else if (key == "filter_sigma_spatial") c.filter.sigma_spatial = parse_number<double>(key, v);
    else if (key == "filter_sigma_intensity") c.filter.sigma_intensity = parse_number<double>(key, v);
    else if (key == "filter_gate") c.filter.gate_threshold = parse_number<double>(key, v);
    else if (key == "filter_passes") c.filter_passes = parse_number<int>(key, v);
    else if (key == "threshold") c.threshold = parse_number<float>(key, v);
    else if (key == "min_edge_length") c.min_edge_length = parse_number<int>(key, v);
    else if (key == "n_syn") c.regions.n_syn = parse_number<int>(key, v);
    else if (key == "n_ctx") c.regions.n_ctx = parse_number<int>(key, v);
    else if (key == "dilate") c.regions.dilate = parse_number<int>(key, v);
    else if (key == "scale_to_image") c.scale_to_image = parse_bool(key, v);
    else if (key == "depth_cap") c.depth_cap = parse_number<int>(key, v);
    else if (key == "validate_each_step") c.validate_each_step = parse_bool(key, v);
    else if (key == "backend") c.backend = v;
    else if (key == "external_command") c.external_command = v;
    else if (key == "diffusion_tol") c.diffusion.tol = parse_number<double>(key, v);
    else if (key == "diffusion_max_iter") c.diffusion.max_iter = parse_number<int>(key, v);
    else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, v);
    else if (key == "fx") c.fx = parse_number<double>(key, v);
    else if (key == "fy") c.fy = parse_number<double>(key, v);
    else if (key == "cx") c.cx = parse_number<double>(key, v);
    else if (key == "cy") c.cy = parse_number<double>(key, v);
    else if (key == "depth_a") c.depth.a = parse_number<double>(key, v);
    else if (key == "depth_b") c.depth.b = parse_number<double>(key, v);
    else throw ConfigError("unknown key '" + key + "'");
  }
  c.regions.threshold = c.threshold;
  c.validate();
  return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

namespace {

// Shortest text that parses back to the same value.
template <class T>
std::string num(T v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

}  // namespace

std::string config_to_text(const PipelineConfig& c) {
  std::ostringstream o;
  o << "depth_mode = " << (c.depth_mode == DepthMode::Depth ? "depth" : "disparity") << "\n"
    << "filter_window = " << c.filter.window << "\n"
    << "filter_sigma_spatial = " << num(c.filter.sigma_spatial) << "\n"
    << "filter_sigma_intensity = " << num(c.filter.sigma_intensity) << "\n"
    << "filter_gate = " << num(c.filter.gate_threshold) << "\n"
    << "filter_passes = " << c.filter_passes << "\n"
    << "threshold = " << num(c.threshold) << "\n"
    << "min_edge_length = " << c.min_edge_length << "\n"
    << "n_syn = " << c.regions.n_syn << "\n"
    << "n_ctx = " << c.regions.n_ctx << "\n"
    << "dilate = " << c.regions.dilate << "\n"
    << "scale_to_image = " << (c.scale_to_image ? "true" : "false") << "\n"
    << "depth_cap = " << c.depth_cap << "\n"
    << "validate_each_step = " << (c.validate_each_step ? "true" : "false") << "\n"
    << "backend = " << c.backend << "\n";
  if (!c.external_command.empty()) o << "external_command = " << c.external_command << "\n";
  o << "diffusion_tol = " << num(c.diffusion.tol) << "\n"
    << "diffusion_max_iter = " << c.diffusion.max_iter << "\n";
  if (c.seed) o << "seed = " << *c.seed << "\n";
  o << "fx = " << num(c.fx) << "\n"
    << "fy = " << num(c.fy) << "\n";
  if (c.cx) o << "cx = " << num(*c.cx) << "\n";
  if (c.cy) o << "cy = " << num(*c.cy) << "\n";
  o << "depth_a = " << num(c.depth.a) << "\n"
    << "depth_b = " << num(c.depth.b) << "\n";
  return o.str();
}

}  // namespace ldi3d
