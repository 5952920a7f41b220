#pragma once

#include "ldi3d/image.hpp"

namespace ldi3d {

struct DiffusionParams {
  double tol = 1e-6;
  int max_iter = 10000;
};

struct DiffusionStats {
  int iterations = 0;
  double max_update = 0;
  bool converged = true;
};

/// Discrete Laplace solve on the unknown positions of a plane.
///
/// Unknowns are the `mask` positions; every other non-excluded position is
/// a fixed boundary value. The stencil couples 4-neighbors p, q only when
/// neither is excluded and barrier(p) == barrier(q), so a line of barrier
/// sites separates the two sides and only couples along itself. Unknowns
/// with no path to a boundary value keep their `seed` value. Red-black
/// over-relaxed Gauss-Seidel sweeps until the largest update is below tol.
class LaplaceSystem {
 public:
  LaplaceSystem(const Mask& mask, const Mask& excluded, const Mask& barrier);

  Plane<float> solve(const Plane<float>& values, const Plane<float>& seed, const DiffusionParams& params = {},
                     DiffusionStats* stats = nullptr) const;

  /// Largest |u - mean(neighbors)| over anchored unknowns.
  double mean_value_residual(const Plane<float>& solution) const;

  int width() const { return width_; }
  int height() const { return height_; }

 private:
  struct Node {
    int index;           // position index
    int nbr[4];          // usable neighbor position indices
    int count;           // number of usable neighbors
    bool anchored;       // connected to at least one boundary value
    bool red;
  };
  int width_ = 0, height_ = 0;
  std::vector<Node> nodes_;
  double omega_ = 1.0;
};

/// Convenience wrapper: one solve with a fresh system.
Plane<float> diffusion_inpaint(const Plane<float>& values, const Mask& mask, const Mask& excluded, const Mask& barrier,
                               const Plane<float>& seed, const DiffusionParams& params = {},
                               DiffusionStats* stats = nullptr);

}  // namespace ldi3d
