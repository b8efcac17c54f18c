#pragma once

// PSNR and SSIM on real images. SSIM uses the standard parameterization: an
// 11x11 Gaussian window with standard deviation 1.5, stability constants
// (0.01 L)^2 and (0.03 L)^2 with dynamic range L = 1 for normalized images.
// Local statistics are Gaussian-filtered with edge-replicated padding so the
// map covers every pixel; the reported index is the map's mean.

#include "sgtv/grid.hpp"

namespace sgtv {

// 10 log10(peak^2 / MSE); +infinity for identical images.
double psnr(const Image& reference, const Image& test, double peak);

struct SsimResult {
  double mean;
  Image map;
};

SsimResult ssim(const Image& reference, const Image& test);

}  // namespace sgtv
