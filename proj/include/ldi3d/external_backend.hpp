#pragma once

#include <filesystem>
#include <string>

#include "ldi3d/image_io.hpp"
#include "ldi3d/inpaint.hpp"

namespace ldi3d {

/// Backend that delegates each stage to an external program.
///
/// For every stage call a fresh directory `<work_dir>/call_NNNNNN` is
/// filled with PFM planes and a `request.json` sidecar, then
/// `<command> <stage> <dir>` is run through the shell. The program must
/// write the plane named by the sidecar's "output" field and exit 0.
///
/// Planes (all cover the request bbox, rows top-to-bottom):
///   color.pfm            3 channels, values in [0,1]
///   disparity.pfm        1 channel
///   edges.pfm            1 channel, 0/1 (context edge map)
///   mask.pfm             1 channel, 0/1 (synthesis positions)
///   excluded.pfm         1 channel, 0/1
///   seed_color.pfm       3 channels, [0,1]
///   seed_disparity.pfm   1 channel
///   inpainted_edges.pfm  1 channel, 0/1 (color and depth stages only)
/// Outputs: edge stage 1 channel (> 0.5 marks an edge), color stage
/// 3 channels in [0,1], depth stage 1 channel disparity.
class ExternalBackend : public InpaintBackend {
 public:
  ExternalBackend(std::string command, std::filesystem::path work_dir, bool keep_files = false);
  std::string name() const override { return "external"; }
  Mask inpaint_edges(const InpaintRequest& req) override;
  RgbImage inpaint_color(const InpaintRequest& req, const Mask& edges) override;
  DisparityMap inpaint_depth(const InpaintRequest& req, const Mask& edges) override;

 private:
  PfmImage call(const std::string& stage, const InpaintRequest& req, const Mask* edges, int channels);

  std::string command_;
  std::filesystem::path work_dir_;
  bool keep_files_;
  int counter_ = 0;
};

}  // namespace ldi3d
