#pragma once

#include <span>
#include <vector>

#include "ldi3d/regions.hpp"

namespace ldi3d {

struct SlotValue {
  Rgb8 color;
  float disparity = 0.f;
};

/// Backend output sampled at each synthesis slot, in slot order.
struct SlotValues {
  std::vector<SlotValue> values;
  std::vector<std::uint8_t> edges;
};

/// Reads the result planes at synthesis positions only.
SlotValues gather_slot_values(const RegionPair& region, const InpaintRequest& request, const InpaintResult& result);

/// Adds one pixel per synthesis slot. Slots created by dilation replace the
/// context pixel they cover (the old id resolves to the new one). New
/// pixels link to each other and to adjacent context pixels with a free
/// slot; a replaced pixel's old neighbors are inherited. A link is refused
/// when either endpoint lies on an inpainted edge and the disparities differ
/// by more than `threshold`. Refused pairs are returned as new depth edges,
/// grouped by 8-connected edge sites, ordered by topmost-leftmost site.
std::vector<DepthEdge> merge_synthesized(Ldi& ldi, const RegionPair& region, const SlotValues& slots, float threshold);

}  // namespace ldi3d
