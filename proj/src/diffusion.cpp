#include "ldi3d/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

namespace ldi3d {

LaplaceSystem::LaplaceSystem(const Mask& mask, const Mask& excluded, const Mask& barrier)
    : width_(mask.width), height_(mask.height) {
  if (excluded.width != width_ || excluded.height != height_ || barrier.width != width_ || barrier.height != height_)
    throw InputError("diffusion planes differ in size");

  std::vector<int> node_of(mask.size(), -1);
  for (int y = 0; y < height_; ++y)
    for (int x = 0; x < width_; ++x)
      if (mask.at(x, y) && !excluded.at(x, y)) {
        node_of[mask.index(x, y)] = static_cast<int>(nodes_.size());
        nodes_.push_back(Node{static_cast<int>(mask.index(x, y)), {-1, -1, -1, -1}, 0, false, (x + y) % 2 == 0});
      }

  std::vector<std::uint8_t> has_boundary(nodes_.size(), 0);
  for (Node& nd : nodes_) {
    int x = nd.index % width_, y = nd.index / width_;
    for (Pos q : {Pos{x - 1, y}, Pos{x + 1, y}, Pos{x, y - 1}, Pos{x, y + 1}}) {
      if (!mask.contains(q) || excluded.at(q) || barrier.at(q) != barrier.at(x, y)) continue;
      nd.nbr[nd.count++] = static_cast<int>(mask.index(q.x, q.y));
      if (!mask.at(q)) has_boundary[&nd - nodes_.data()] = 1;
    }
  }

  // Anchored = connected through unknowns to some boundary value.
  std::deque<int> queue;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (has_boundary[i]) {
      nodes_[i].anchored = true;
      queue.push_back(static_cast<int>(i));
    }
  while (!queue.empty()) {
    const Node& nd = nodes_[queue.front()];
    queue.pop_front();
    for (int k = 0; k < nd.count; ++k) {
      int j = node_of[nd.nbr[k]];
      if (j >= 0 && !nodes_[j].anchored) {
        nodes_[j].anchored = true;
        queue.push_back(j);
      }
    }
  }

  int extent = std::max(width_, height_) + 1;
  omega_ = 2.0 / (1.0 + std::sin(std::numbers::pi / extent));
}

Plane<float> LaplaceSystem::solve(const Plane<float>& values, const Plane<float>& seed, const DiffusionParams& params,
                                  DiffusionStats* stats) const {
  if (values.width != width_ || values.height != height_ || seed.width != width_ || seed.height != height_)
    throw InputError("diffusion planes differ in size");
  std::vector<double> u(values.data.begin(), values.data.end());
  for (const Node& nd : nodes_) u[nd.index] = seed.data[nd.index];

  DiffusionStats st;
  st.converged = true;
  bool any_anchored = std::any_of(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.anchored; });
  if (any_anchored) {
    st.converged = false;
    for (st.iterations = 0; st.iterations < params.max_iter;) {
      double max_update = 0;
      for (bool red : {true, false}) {
        for (const Node& nd : nodes_) {
          if (!nd.anchored || nd.red != red) continue;
          double sum = 0;
          for (int k = 0; k < nd.count; ++k) sum += u[nd.nbr[k]];
          double delta = omega_ * (sum / nd.count - u[nd.index]);
          u[nd.index] += delta;
          max_update = std::max(max_update, std::abs(delta));
        }
      }
      ++st.iterations;
      st.max_update = max_update;
      if (max_update < params.tol) {
        st.converged = true;
        break;
      }
    }
  }
  if (stats) *stats = st;

  Plane<float> out = values;
  for (const Node& nd : nodes_) out.data[nd.index] = static_cast<float>(u[nd.index]);
  return out;
}

double LaplaceSystem::mean_value_residual(const Plane<float>& s) const {
  double worst = 0;
  for (const Node& nd : nodes_) {
    if (!nd.anchored) continue;
    double sum = 0;
    for (int k = 0; k < nd.count; ++k) sum += s.data[nd.nbr[k]];
    worst = std::max(worst, std::abs(sum / nd.count - s.data[nd.index]));
  }
  return worst;
}

Plane<float> diffusion_inpaint(const Plane<float>& values, const Mask& mask, const Mask& excluded, const Mask& barrier,
                               const Plane<float>& seed, const DiffusionParams& params, DiffusionStats* stats) {
  return LaplaceSystem(mask, excluded, barrier).solve(values, seed, params, stats);
}

}  // namespace ldi3d
