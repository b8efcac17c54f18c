#include "sgtv/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace sgtv {

namespace {

constexpr int kRadius = 5;  // 11x11 window
constexpr double kSigma = 1.5;
constexpr double kC1 = 0.01 * 0.01;  // (k1 * L)^2, L = 1
constexpr double kC2 = 0.03 * 0.03;

std::array<double, 2 * kRadius + 1> gaussian_kernel() {
  std::array<double, 2 * kRadius + 1> k{};
  double sum = 0.0;
  for (int t = -kRadius; t <= kRadius; ++t) {
    k[static_cast<std::size_t>(t + kRadius)] = std::exp(-0.5 * t * t / (kSigma * kSigma));
    sum += k[static_cast<std::size_t>(t + kRadius)];
  }
  for (double& v : k) v /= sum;
  return k;
}

// Separable Gaussian filter with replicated edges.
void gauss_filter(const Image& in, Image& tmp, Image& out) {
  static const auto kernel = gaussian_kernel();
  const int h = in.height(), w = in.width();
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < w; ++j) {
      double s = 0.0;
      for (int t = -kRadius; t <= kRadius; ++t) {
        const int jj = std::clamp(j + t, 0, w - 1);
        s += kernel[static_cast<std::size_t>(t + kRadius)] * in(i, jj);
      }
      tmp(i, j) = s;
    }
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < w; ++j) {
      double s = 0.0;
      for (int t = -kRadius; t <= kRadius; ++t) {
        const int ii = std::clamp(i + t, 0, h - 1);
        s += kernel[static_cast<std::size_t>(t + kRadius)] * tmp(ii, j);
      }
      out(i, j) = s;
    }
}

}  // namespace

double psnr(const Image& reference, const Image& test, double peak) {
  if (!reference.same_shape(test)) throw std::invalid_argument("psnr: shape mismatch");
  if (!(peak > 0.0)) throw std::invalid_argument("psnr: peak must be > 0");
  double mse = 0.0;
  const double* a = reference.data();
  const double* b = test.data();
  for (std::int64_t k = 0; k < reference.size(); ++k) {
    const double d = a[k] - b[k];
    mse += d * d;
  }
  mse /= static_cast<double>(reference.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / mse);
}

SsimResult ssim(const Image& reference, const Image& test) {
  if (!reference.same_shape(test)) throw std::invalid_argument("ssim: shape mismatch");
  const int h = reference.height(), w = reference.width();

  Image tmp(h, w), mu_x(h, w), mu_y(h, w), xx(h, w), yy(h, w), xy(h, w);
  gauss_filter(reference, tmp, mu_x);
  gauss_filter(test, tmp, mu_y);

  Image prod(h, w);
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < w; ++j) prod(i, j) = reference(i, j) * reference(i, j);
  gauss_filter(prod, tmp, xx);
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < w; ++j) prod(i, j) = test(i, j) * test(i, j);
  gauss_filter(prod, tmp, yy);
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < w; ++j) prod(i, j) = reference(i, j) * test(i, j);
  gauss_filter(prod, tmp, xy);

  SsimResult res{0.0, Image(h, w)};
  double sum = 0.0;
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < w; ++j) {
      const double mx = mu_x(i, j);
      const double my = mu_y(i, j);
      const double var_x = xx(i, j) - mx * mx;
      const double var_y = yy(i, j) - my * my;
      const double cov = xy(i, j) - mx * my;
      const double val = ((2.0 * mx * my + kC1) * (2.0 * cov + kC2)) /
                         ((mx * mx + my * my + kC1) * (var_x + var_y + kC2));
      res.map(i, j) = val;
      sum += val;
    }
  res.mean = sum / static_cast<double>(res.map.size());
  return res;
}

}  // namespace sgtv
