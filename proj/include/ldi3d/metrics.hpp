#pragma once

#include <vector>

#include "ldi3d/image.hpp"

namespace ldi3d {

/// Channel-major float tensor (C x H x W).
struct Tensor3 {
  int channels = 0, height = 0, width = 0;
  std::vector<float> data;

  Tensor3() = default;
  Tensor3(int c, int h, int w, float fill = 0.f);
  float& at(int c, int y, int x) { return data[(static_cast<std::size_t>(c) * height + y) * width + x]; }
  float at(int c, int y, int x) const { return data[(static_cast<std::size_t>(c) * height + y) * width + x]; }
  std::size_t size() const { return data.size(); }
};

Tensor3 to_tensor(const RgbImage& img);

/// Feature maps of one image, one tensor per layer.
using FeatureStack = std::vector<Tensor3>;

struct ReconLosses {
  double synthesis = 0;
  double context = 0;
};

/// L1 of the masked difference divided by N = C*H*W (pixel-channels).
/// Masks are H x W and apply to every channel.
ReconLosses masked_recon_losses(const Tensor3& image, const Tensor3& truth, const Mask& synthesis, const Mask& context);

/// Sum over layers of the L1 feature difference divided by the layer's element count.
double perceptual_loss(const FeatureStack& a, const FeatureStack& b);

/// Sum over layers of |Gram(a) - Gram(b)|_1 / (C*H*W) / C^2 where
/// Gram(F) = F^T F with F reshaped to (H*W) x C.
double style_loss(const FeatureStack& a, const FeatureStack& b);

/// Sum of L1 differences between horizontally and vertically adjacent
/// positions that both lie in `synthesis`, divided by C*H*W.
double tv_loss(const Tensor3& image, const Mask& synthesis);

struct LossParts {
  double context = 0, synthesis = 0, perceptual = 0, style = 0, tv = 0;
};

struct LossWeights {
  double context, synthesis, perceptual, style, tv;
};

inline constexpr LossWeights kColorLossWeights{1.0, 6.0, 0.05, 120.0, 0.01};

double combined_color_objective(const LossParts& parts);
/// Depth model objective: context + synthesis.
double depth_objective(const LossParts& parts);

/// 8-bit PSNR; +infinity for identical images.
double psnr(const RgbImage& a, const RgbImage& b);

struct SsimParams {
  int window = 11;
  double sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
};

/// Mean SSIM over all fully contained Gaussian windows, averaged over channels.
double ssim(const RgbImage& a, const RgbImage& b, const SsimParams& params = {});

}  // namespace ldi3d
