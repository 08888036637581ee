#include "tacchi/metrics/image_metrics.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "tacchi/errors.hpp"

namespace tacchi::metrics {

namespace {

constexpr int kWindow = 8;
constexpr double kC1 = (0.01 * 255.0) * (0.01 * 255.0);
constexpr double kC2 = (0.03 * 255.0) * (0.03 * 255.0);

void check_shapes(const render::Image8& a, const render::Image8& b) {
  if (a.width != b.width || a.height != b.height)
    throw ShapeMismatch("image shapes differ: " + std::to_string(a.width) + "x" +
                        std::to_string(a.height) + " vs " + std::to_string(b.width) + "x" +
                        std::to_string(b.height));
  if (a.width <= 0 || a.height <= 0) throw ShapeMismatch("empty image");
}

std::vector<double> to_gray(const render::Image8& img) {
  std::vector<double> g(static_cast<std::size_t>(img.width) * img.height);
  for (std::size_t i = 0; i < g.size(); ++i)
    g[i] = (img.data[3 * i] + img.data[3 * i + 1] + img.data[3 * i + 2]) / 3.0;
  return g;
}

// Summed-area table with a leading zero row/column.
struct Integral {
  int w, h;
  std::vector<double> s;
  Integral(const std::vector<double>& v, int width, int height) : w(width), h(height) {
    s.assign(static_cast<std::size_t>(w + 1) * (h + 1), 0.0);
    for (int y = 0; y < h; ++y) {
      double row = 0.0;
      for (int x = 0; x < w; ++x) {
        row += v[static_cast<std::size_t>(y) * w + x];
        s[static_cast<std::size_t>(y + 1) * (w + 1) + (x + 1)] =
            s[static_cast<std::size_t>(y) * (w + 1) + (x + 1)] + row;
      }
    }
  }
  double sum(int x0, int y0, int n) const {  // n x n window at (x0, y0)
    const auto idx = [this](int y, int x) {
      return s[static_cast<std::size_t>(y) * (w + 1) + x];
    };
    return idx(y0 + n, x0 + n) - idx(y0, x0 + n) - idx(y0 + n, x0) + idx(y0, x0);
  }
};

}  // namespace

double ssim(const render::Image8& a, const render::Image8& b) {
  check_shapes(a, b);
  const int w = a.width, h = a.height;
  if (w < kWindow || h < kWindow) throw ShapeMismatch("image smaller than the SSIM window");

  const std::vector<double> ga = to_gray(a), gb = to_gray(b);
  std::vector<double> ga2(ga.size()), gb2(ga.size()), gab(ga.size());
  for (std::size_t i = 0; i < ga.size(); ++i) {
    ga2[i] = ga[i] * ga[i];
    gb2[i] = gb[i] * gb[i];
    gab[i] = ga[i] * gb[i];
  }
  const Integral ia(ga, w, h), ib(gb, w, h), ia2(ga2, w, h), ib2(gb2, w, h), iab(gab, w, h);

  const double n = kWindow * kWindow;
  double total = 0.0;
  std::size_t count = 0;
  for (int y = 0; y + kWindow <= h; ++y) {
    for (int x = 0; x + kWindow <= w; ++x) {
      const double mu_a = ia.sum(x, y, kWindow) / n;
      const double mu_b = ib.sum(x, y, kWindow) / n;
      const double var_a = ia2.sum(x, y, kWindow) / n - mu_a * mu_a;
      const double var_b = ib2.sum(x, y, kWindow) / n - mu_b * mu_b;
      const double cov = iab.sum(x, y, kWindow) / n - mu_a * mu_b;
      const double num = (2.0 * mu_a * mu_b + kC1) * (2.0 * cov + kC2);
      const double den = (mu_a * mu_a + mu_b * mu_b + kC1) * (var_a + var_b + kC2);
      total += num / den;
      ++count;
    }
  }
  return total / static_cast<double>(count);
}

double psnr(const render::Image8& a, const render::Image8& b) {
  check_shapes(a, b);
  double se = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    const double d = static_cast<double>(a.data[i]) - static_cast<double>(b.data[i]);
    se += d * d;
  }
  const double mse = se / static_cast<double>(a.data.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double mae(const render::Image8& a, const render::Image8& b) {
  check_shapes(a, b);
  double sum = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i)
    sum += std::abs(static_cast<double>(a.data[i]) - static_cast<double>(b.data[i]));
  return sum / static_cast<double>(a.data.size()) / 255.0 * 100.0;
}

MetricReport compare(const render::Image8& a, const render::Image8& b) {
  return {ssim(a, b), psnr(a, b), mae(a, b)};
}

}  // namespace tacchi::metrics
