#pragma once

#include <memory>
#include <string>

#include "ldi3d/diffusion.hpp"
#include "ldi3d/inpaint_types.hpp"

namespace ldi3d {

/// Three-stage inpainting contract. The edge stage runs first; its output
/// conditions the color and depth stages, which do not see each other.
/// Stages may read context positions, the masks, the seeds and earlier
/// stage planes, never excluded positions.
class InpaintBackend {
 public:
  virtual ~InpaintBackend() = default;
  virtual std::string name() const = 0;
  virtual Mask inpaint_edges(const InpaintRequest& req) = 0;
  virtual RgbImage inpaint_color(const InpaintRequest& req, const Mask& edges) = 0;
  virtual DisparityMap inpaint_depth(const InpaintRequest& req, const Mask& edges) = 0;
};

/// Runs edge -> color -> depth and validates every stage output. An empty
/// synthesis mask returns an empty result without calling the backend.
/// Backend exceptions are rethrown as BackendError tagged with the stage.
InpaintResult inpaint_stage_order(const InpaintRequest& req, InpaintBackend& backend);

/// Straight-line continuation of context edges into the synthesis region.
/// An endpoint is a context edge site with exactly one 8-neighboring
/// context edge site; the walk repeats its last step while the next
/// position is an unmarked synthesis position. Endpoints are visited in
/// scan order. Returns marks on synthesis positions only.
Mask continue_edges(const InpaintRequest& req);

/// Context edges plus inpainted edges on synthesis positions.
Mask combined_edges(const InpaintRequest& req, const Mask& inpainted);

/// Built-in baseline: edge continuation plus isotropic diffusion for color
/// and disparity, with edges acting as barriers.
class DiffusionBackend : public InpaintBackend {
 public:
  explicit DiffusionBackend(DiffusionParams params = {}) : params_(params) {}
  std::string name() const override { return "diffusion"; }
  Mask inpaint_edges(const InpaintRequest& req) override;
  RgbImage inpaint_color(const InpaintRequest& req, const Mask& edges) override;
  DisparityMap inpaint_depth(const InpaintRequest& req, const Mask& edges) override;

 private:
  DiffusionParams params_;
};

}  // namespace ldi3d
