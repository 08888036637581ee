#pragma once

#include "tacchi/render/image.hpp"

namespace tacchi::metrics {

struct MetricReport {
  double ssim = 0.0;      // [-1, 1]
  double psnr_db = 0.0;   // +infinity for identical images
  double mae_pct = 0.0;   // mean |a-b| / 255, in percent
};

/// Windowed SSIM: sliding 8x8 uniform windows, constants C1 = (0.01*255)^2,
/// C2 = (0.03*255)^2, mean over windows. RGB inputs are converted to
/// grayscale by channel mean. Throws ShapeMismatch on differing sizes.
double ssim(const render::Image8& a, const render::Image8& b);

/// 10*log10(255^2 / MSE) over all channels; +infinity when MSE = 0.
double psnr(const render::Image8& a, const render::Image8& b);

/// mean(|a-b|)/255 over all channels, as a percentage.
double mae(const render::Image8& a, const render::Image8& b);

MetricReport compare(const render::Image8& a, const render::Image8& b);

}  // namespace tacchi::metrics
