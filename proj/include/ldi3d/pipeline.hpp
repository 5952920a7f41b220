#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ldi3d/inpaint.hpp"
#include "ldi3d/regions.hpp"

namespace ldi3d {

struct PipelineOptions {
  RegionParams regions;
  /// Disparity jump used for context edge maps and merge barriers.
  float threshold = 0.04f;
  /// Highest recursion level processed. Original edges are level 1.
  int depth_cap = 8;
  bool validate_each_step = false;
  /// Shuffles the initial edge queue; unset keeps edge id order.
  std::optional<std::uint64_t> shuffle_seed;
  /// Called after every LDI mutation with a short step name ("cut", "merge").
  std::function<void(const Ldi&, const std::string&)> on_mutation;
};

struct StageTimings {
  double cut = 0, regions = 0, flatten = 0, inpaint = 0, merge = 0;
};

struct RunReport {
  int input_edges = 0;
  int edges_processed = 0;
  int edges_created = 0;
  /// Highest recursion level that processed an edge (0 when no edges).
  int levels = 0;
  std::vector<int> edges_per_level;  // index 0 is level 1
  long long synthesized_pixels = 0;
  long long context_pixels = 0;
  StageTimings seconds;
  std::vector<std::string> warnings;
};

/// Layered inpainting driver. Each queued edge is cut, its regions are
/// extracted, flattened, inpainted and merged back; edges produced by the
/// merge are queued one level deeper. Edges beyond `depth_cap` are dropped
/// with a warning.
RunReport run_pipeline(Ldi& ldi, const std::vector<DepthEdge>& edges, InpaintBackend& backend,
                       const PipelineOptions& options = {});

}  // namespace ldi3d
