#include "ldi3d/metrics.hpp"

#include <cmath>
#include <limits>

namespace ldi3d {
namespace {

void check_same(const Tensor3& a, const Tensor3& b) {
  if (a.channels != b.channels || a.height != b.height || a.width != b.width)
    throw InputError("tensor shapes differ");
}

void check_mask(const Tensor3& t, const Mask& m) {
  if (m.width != t.width || m.height != t.height) throw InputError("mask size differs from image");
}

void check_stacks(const FeatureStack& a, const FeatureStack& b) {
  if (a.size() != b.size() || a.empty()) throw InputError("feature stacks differ in layer count or are empty");
  for (std::size_t i = 0; i < a.size(); ++i) {
    check_same(a[i], b[i]);
    for (float v : a[i].data)
      if (!std::isfinite(v)) throw InputError("feature map contains non-finite values");
    for (float v : b[i].data)
      if (!std::isfinite(v)) throw InputError("feature map contains non-finite values");
  }
}

std::vector<double> gram(const Tensor3& f) {
  const int c = f.channels;
  const std::size_t hw = static_cast<std::size_t>(f.height) * f.width;
  std::vector<double> g(static_cast<std::size_t>(c) * c, 0.0);
  for (int i = 0; i < c; ++i)
    for (int j = i; j < c; ++j) {
      double s = 0;
      const float* fi = f.data.data() + i * hw;
      const float* fj = f.data.data() + j * hw;
      for (std::size_t k = 0; k < hw; ++k) s += double(fi[k]) * fj[k];
      g[i * c + j] = g[j * c + i] = s;
    }
  return g;
}

std::vector<double> gaussian_window(int size, double sigma) {
  std::vector<double> w(size);
  double sum = 0;
  for (int i = 0; i < size; ++i) {
    double d = i - (size - 1) / 2.0;
    w[i] = std::exp(-d * d / (2 * sigma * sigma));
    sum += w[i];
  }
  for (double& v : w) v /= sum;
  return w;
}

// Valid-mode separable filtering of a single-channel plane.
std::vector<double> filter_valid(const std::vector<double>& img, int w, int h, const std::vector<double>& k) {
  const int n = static_cast<int>(k.size());
  const int ow = w - n + 1, oh = h - n + 1;
  std::vector<double> tmp(static_cast<std::size_t>(ow) * h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < ow; ++x) {
      double s = 0;
      for (int i = 0; i < n; ++i) s += k[i] * img[static_cast<std::size_t>(y) * w + x + i];
      tmp[static_cast<std::size_t>(y) * ow + x] = s;
    }
  std::vector<double> out(static_cast<std::size_t>(ow) * oh);
  for (int y = 0; y < oh; ++y)
    for (int x = 0; x < ow; ++x) {
      double s = 0;
      for (int i = 0; i < n; ++i) s += k[i] * tmp[static_cast<std::size_t>(y + i) * ow + x];
      out[static_cast<std::size_t>(y) * ow + x] = s;
    }
  return out;
}

}  // namespace

Tensor3::Tensor3(int c, int h, int w, float fill) : channels(c), height(h), width(w) {
  if (c < 0 || h < 0 || w < 0) throw InputError("negative tensor dimensions");
  data.assign(static_cast<std::size_t>(c) * h * w, fill);
}

Tensor3 to_tensor(const RgbImage& img) {
  Tensor3 t(3, img.height, img.width);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) {
      const Rgb8& p = img.at(x, y);
      t.at(0, y, x) = p.r;
      t.at(1, y, x) = p.g;
      t.at(2, y, x) = p.b;
    }
  return t;
}

ReconLosses masked_recon_losses(const Tensor3& image, const Tensor3& truth, const Mask& synthesis, const Mask& context) {
  check_same(image, truth);
  check_mask(image, synthesis);
  check_mask(image, context);
  ReconLosses out;
  if (image.size() == 0) return out;
  for (int c = 0; c < image.channels; ++c)
    for (int y = 0; y < image.height; ++y)
      for (int x = 0; x < image.width; ++x) {
        double d = std::abs(double(image.at(c, y, x)) - truth.at(c, y, x));
        if (synthesis.at(x, y)) out.synthesis += d;
        if (context.at(x, y)) out.context += d;
      }
  const double n = static_cast<double>(image.size());
  out.synthesis /= n;
  out.context /= n;
  return out;
}

double perceptual_loss(const FeatureStack& a, const FeatureStack& b) {
  check_stacks(a, b);
  double total = 0;
  for (std::size_t p = 0; p < a.size(); ++p) {
    if (a[p].size() == 0) continue;
    double s = 0;
    for (std::size_t i = 0; i < a[p].size(); ++i) s += std::abs(double(a[p].data[i]) - b[p].data[i]);
    total += s / static_cast<double>(a[p].size());
  }
  return total;
}

double style_loss(const FeatureStack& a, const FeatureStack& b) {
  check_stacks(a, b);
  double total = 0;
  for (std::size_t p = 0; p < a.size(); ++p) {
    if (a[p].size() == 0) continue;
    const double c = a[p].channels;
    const double n = static_cast<double>(a[p].size());
    auto ga = gram(a[p]), gb = gram(b[p]);
    double s = 0;
    for (std::size_t i = 0; i < ga.size(); ++i) s += std::abs((ga[i] - gb[i]) / n);
    total += s / (c * c);
  }
  return total;
}

double tv_loss(const Tensor3& image, const Mask& synthesis) {
  check_mask(image, synthesis);
  if (image.size() == 0) return 0;
  double s = 0;
  for (int c = 0; c < image.channels; ++c)
    for (int y = 0; y < image.height; ++y)
      for (int x = 0; x < image.width; ++x) {
        if (!synthesis.at(x, y)) continue;
        if (x + 1 < image.width && synthesis.at(x + 1, y))
          s += std::abs(double(image.at(c, y, x + 1)) - image.at(c, y, x));
        if (y + 1 < image.height && synthesis.at(x, y + 1))
          s += std::abs(double(image.at(c, y + 1, x)) - image.at(c, y, x));
      }
  return s / static_cast<double>(image.size());
}

double combined_color_objective(const LossParts& p) {
  const LossWeights& w = kColorLossWeights;
  return w.context * p.context + w.synthesis * p.synthesis + w.perceptual * p.perceptual + w.style * p.style +
         w.tv * p.tv;
}

double depth_objective(const LossParts& p) { return p.context + p.synthesis; }

double psnr(const RgbImage& a, const RgbImage& b) {
  if (a.width != b.width || a.height != b.height) throw InputError("image sizes differ");
  if (a.empty()) throw InputError("empty image");
  double se = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Rgb8 &p = a.data[i], &q = b.data[i];
    double dr = p.r - q.r, dg = p.g - q.g, db = p.b - q.b;
    se += dr * dr + dg * dg + db * db;
  }
  if (se == 0) return std::numeric_limits<double>::infinity();
  const double mse = se / (3.0 * static_cast<double>(a.size()));
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double ssim(const RgbImage& a, const RgbImage& b, const SsimParams& params) {
  if (a.width != b.width || a.height != b.height) throw InputError("image sizes differ");
  if (params.window <= 0 || a.width < params.window || a.height < params.window)
    throw InputError("image smaller than the SSIM window");
  const int w = a.width, h = a.height;
  const double c1 = std::pow(params.k1 * 255.0, 2), c2 = std::pow(params.k2 * 255.0, 2);
  const auto k = gaussian_window(params.window, params.sigma);
  const Tensor3 ta = to_tensor(a), tb = to_tensor(b);
  const std::size_t n = static_cast<std::size_t>(w) * h;
  double total = 0;
  for (int c = 0; c < 3; ++c) {
    std::vector<double> x(n), y(n), xx(n), yy(n), xy(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = ta.data[c * n + i];
      y[i] = tb.data[c * n + i];
      xx[i] = x[i] * x[i];
      yy[i] = y[i] * y[i];
      xy[i] = x[i] * y[i];
    }
    auto mx = filter_valid(x, w, h, k), my = filter_valid(y, w, h, k);
    auto sxx = filter_valid(xx, w, h, k), syy = filter_valid(yy, w, h, k), sxy = filter_valid(xy, w, h, k);
    double s = 0;
    for (std::size_t i = 0; i < mx.size(); ++i) {
      double vx = sxx[i] - mx[i] * mx[i], vy = syy[i] - my[i] * my[i], cv = sxy[i] - mx[i] * my[i];
      s += ((2 * mx[i] * my[i] + c1) * (2 * cv + c2)) / ((mx[i] * mx[i] + my[i] * my[i] + c1) * (vx + vy + c2));
    }
    total += s / static_cast<double>(mx.size());
  }
  return total / 3.0;
}

}  // namespace ldi3d
