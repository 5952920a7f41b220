#include "ldi3d/build.hpp"

#include <chrono>

#include "ldi3d/external_backend.hpp"

namespace ldi3d {

PipelineOptions pipeline_options(const PipelineConfig& config, int width, int height) {
  PipelineOptions o;
  o.regions = config.regions_for(width, height);
  o.threshold = config.threshold;
  o.depth_cap = config.depth_cap;
  o.validate_each_step = config.validate_each_step;
  o.shuffle_seed = config.seed;
  return o;
}

BuildResult build_ldi(const RgbImage& color, const Plane<float>& depth_or_disparity, const PipelineConfig& config,
                      InpaintBackend& backend, const PipelineOptions* overrides) {
  if (color.width != depth_or_disparity.width || color.height != depth_or_disparity.height)
    throw InputError("color and depth images differ in size");
  const auto t0 = std::chrono::steady_clock::now();
  BuildResult r;
  r.disparity = normalize_disparity(depth_or_disparity, config.depth_mode);
  for (int i = 0; i < config.filter_passes; ++i) r.disparity = bilateral_median_filter(r.disparity, config.filter);
  r.ldi = lift_image(color, r.disparity);
  Discontinuities disc = detect_discontinuities(r.disparity, config.threshold);
  r.edges = link_depth_edges(disc, r.ldi, config.edge_length_for(color.width, color.height));
  r.preprocess_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  PipelineOptions options = overrides ? *overrides : pipeline_options(config, color.width, color.height);
  r.report = run_pipeline(r.ldi, r.edges, backend, options);
  return r;
}

std::unique_ptr<InpaintBackend> make_backend(const PipelineConfig& config, const std::filesystem::path& work_dir) {
  if (config.backend == "external") return std::make_unique<ExternalBackend>(config.external_command, work_dir);
  return std::make_unique<DiffusionBackend>(config.diffusion);
}

}  // namespace ldi3d
