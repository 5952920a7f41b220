#pragma once

#include <memory>
#include <vector>

#include "ldi3d/config.hpp"
#include "ldi3d/inpaint.hpp"
#include "ldi3d/ldi.hpp"
#include "ldi3d/pipeline.hpp"

namespace ldi3d {

struct BuildResult {
  DisparityMap disparity;  // normalized and filtered
  Ldi ldi;
  std::vector<DepthEdge> edges;
  RunReport report;
  double preprocess_seconds = 0;
};

/// Normalize -> filter -> discontinuities -> linked edges -> layered inpainting.
BuildResult build_ldi(const RgbImage& color, const Plane<float>& depth_or_disparity, const PipelineConfig& config,
                      InpaintBackend& backend, const PipelineOptions* overrides = nullptr);

/// Backend selected by the config ("diffusion" or "external").
std::unique_ptr<InpaintBackend> make_backend(const PipelineConfig& config, const std::filesystem::path& work_dir);

PipelineOptions pipeline_options(const PipelineConfig& config, int width, int height);

}  // namespace ldi3d
