#pragma once

#include <vector>

#include "ldi3d/depth_edge.hpp"
#include "ldi3d/image.hpp"
#include "ldi3d/ldi.hpp"

namespace ldi3d {

enum class DepthMode { Depth, Disparity };

/// Maps disparity (1/depth in Depth mode) affinely onto [0,1]. A constant
/// input maps to 0.5 everywhere.
DisparityMap normalize_disparity(const Plane<float>& input, DepthMode mode);

struct FilterParams {
  int window = 7;
  double sigma_spatial = 4.0;
  double sigma_intensity = 0.5;
  /// Samples with a 4-neighbor differing by more than this are excluded from
  /// the median weights, so blurred discontinuities snap to a plateau.
  /// <= 0 disables the gate and gives the plain bilateral weighted median.
  double gate_threshold = 0.04;
};

/// Weighted median over a clipped window. Weight of sample q for center p:
///   exp(-|p-q|^2 / 2 sigma_s^2) * exp(-(d(p)-d(q))^2 / 2 sigma_i^2) * reliable(q)
/// Samples are sorted by value; the output is the first value whose
/// cumulative weight reaches half the total. If every weight is zero the
/// center value is kept.
DisparityMap bilateral_median_filter(const DisparityMap& d, const FilterParams& params = {});

struct SitePair {
  Pos near;
  Pos far;
  friend bool operator==(const SitePair&, const SitePair&) = default;
};

struct Discontinuities {
  Mask sites;                   // 1 on the far side of every pair
  std::vector<SitePair> pairs;  // scan order, right neighbor before down neighbor
};

/// Marks every 4-neighbor pair whose disparity difference exceeds `threshold`.
Discontinuities detect_discontinuities(const DisparityMap& d, float threshold);

/// Connected components of sites (8-connectivity), split at junctions
/// (sites with >= 3 marked 8-neighbors). Components shorter than
/// `min_edge_length` are dropped; each junction site then joins the
/// adjacent surviving edge with the smallest id. Edges are ordered by their
/// topmost-leftmost site; cut pairs are resolved against `ldi`.
std::vector<DepthEdge> link_depth_edges(const Discontinuities& disc, const Ldi& ldi, int min_edge_length = 10);

/// min_edge_length scaled linearly by the long image side relative to 1024 px.
int scaled_edge_length(int base_length, int width, int height);

}  // namespace ldi3d
