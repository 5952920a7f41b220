#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "ldi3d/diffusion.hpp"
#include "ldi3d/mesh.hpp"
#include "ldi3d/preprocess.hpp"
#include "ldi3d/regions.hpp"

namespace ldi3d {

/// Every tunable of the pipeline. Loaded from `key = value` text; `#`
/// starts a comment. Unknown keys and out-of-range values are ConfigErrors.
struct PipelineConfig {
  DepthMode depth_mode = DepthMode::Disparity;
  FilterParams filter;
  int filter_passes = 1;
  float threshold = 0.04f;
  int min_edge_length = 10;
  RegionParams regions;
  /// Scale lengths (min_edge_length, n_syn, n_ctx, dilate) by long side / 1024.
  bool scale_to_image = false;
  int depth_cap = 8;
  bool validate_each_step = false;
  std::string backend = "diffusion";  // or "external"
  std::string external_command;
  DiffusionParams diffusion;
  std::optional<std::uint64_t> seed;
  /// Intrinsics; a value <= 0 selects the default for the image size.
  double fx = 0, fy = 0;
  std::optional<double> cx, cy;
  DepthModel depth;

  void validate() const;
  Camera camera_for(int width, int height) const;
  int edge_length_for(int width, int height) const;
  RegionParams regions_for(int width, int height) const;
};

PipelineConfig parse_config(const std::string& text);
PipelineConfig load_config(const std::filesystem::path& path);
std::string config_to_text(const PipelineConfig& config);

}  // namespace ldi3d
