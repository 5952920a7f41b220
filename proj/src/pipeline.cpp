#include "ldi3d/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <random>

#include "ldi3d/cut.hpp"
#include "ldi3d/merge.hpp"

namespace ldi3d {
namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Queued {
  DepthEdge edge;
  int level;
};

}  // namespace

RunReport run_pipeline(Ldi& ldi, const std::vector<DepthEdge>& edges, InpaintBackend& backend,
                       const PipelineOptions& options) {
  RunReport report;
  report.input_edges = static_cast<int>(edges.size());

  std::vector<DepthEdge> initial = edges;
  if (options.shuffle_seed) {
    std::mt19937_64 rng(*options.shuffle_seed);
    for (std::size_t i = initial.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(rng() % i);
      std::swap(initial[i - 1], initial[j]);
    }
  }
  std::deque<Queued> queue;
  int next_id = 0;
  for (auto& e : initial) {
    next_id = std::max(next_id, e.id + 1);
    queue.push_back({std::move(e), 1});
  }

  auto mutated = [&](const char* step) {
    if (options.validate_each_step) ldi.validate();
    if (options.on_mutation) options.on_mutation(ldi, step);
  };

  int dropped = 0;
  while (!queue.empty()) {
    Queued item = std::move(queue.front());
    queue.pop_front();
    if (item.level > options.depth_cap) {
      ++dropped;
      continue;
    }
    if (static_cast<int>(report.edges_per_level.size()) < item.level) report.edges_per_level.resize(item.level, 0);
    ++report.edges_per_level[item.level - 1];
    report.levels = std::max(report.levels, item.level);
    ++report.edges_processed;

    auto t = Clock::now();
    SilhouettePair sil = cut_edge(ldi, item.edge);
    report.seconds.cut += since(t);
    mutated("cut");

    t = Clock::now();
    RegionPair region = extract_regions(ldi, sil, options.regions, item.edge.id);
    report.seconds.regions += since(t);
    if (region.synthesis.empty()) continue;

    t = Clock::now();
    InpaintRequest req = flatten_regions(ldi, region, options.threshold);
    report.seconds.flatten += since(t);

    t = Clock::now();
    InpaintResult res = inpaint_stage_order(req, backend);
    report.seconds.inpaint += since(t);

    t = Clock::now();
    std::vector<DepthEdge> created = merge_synthesized(ldi, region, gather_slot_values(region, req, res), options.threshold);
    report.seconds.merge += since(t);
    mutated("merge");

    report.synthesized_pixels += static_cast<long long>(region.synthesis.size());
    report.context_pixels += static_cast<long long>(region.context.size());
    report.edges_created += static_cast<int>(created.size());
    for (auto& e : created) {
      e.id = next_id++;
      queue.push_back({std::move(e), item.level + 1});
    }
  }
  if (dropped > 0)
    report.warnings.push_back("recursion cap " + std::to_string(options.depth_cap) + " reached; " +
                              std::to_string(dropped) + " edge(s) left unprocessed");
  return report;
}

}  // namespace ldi3d
