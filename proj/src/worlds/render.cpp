#include "levelset/worlds/render.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "levelset/simd/kernels.hpp"

namespace levelset::render {
namespace {

// Index range of pixels whose centers lie in [lo, hi). Half-open, so shapes
// sharing an edge never both claim a pixel and widths are not over-counted.
std::pair<int, int> covered(double lo, double hi, int limit) {
  const int first = std::max(0, static_cast<int>(std::ceil(lo - 0.5)));
  const int last = std::min(limit - 1, static_cast<int>(std::ceil(hi - 0.5)) - 1);
  return {first, last};
}

}  // namespace

void fill_rectangle(Image& canvas, double x0, double y0, double x1, double y1) {
  const auto [cx0, cx1] = covered(x0, x1, canvas.width);
  const auto [cy0, cy1] = covered(y0, y1, canvas.height);
  for (int y = cy0; y <= cy1; ++y) {
    for (int x = cx0; x <= cx1; ++x) canvas.at(x, y) = 1.0;
  }
}

void fill_triangle(Image& canvas, double cx, double base_y, double half_base, double height) {
  if (!(height > 0.0) || !(half_base > 0.0)) return;
  const double apex_y = base_y - height;
  const auto [ry0, ry1] = covered(apex_y, base_y, canvas.height);
  for (int y = ry0; y <= ry1; ++y) {
    const double py = y + 0.5;
    const double half = half_base * (py - apex_y) / height;
    const auto [rx0, rx1] = covered(cx - half, cx + half, canvas.width);
    for (int x = rx0; x <= rx1; ++x) canvas.at(x, y) = 1.0;
  }
}

void fill_circle(Image& canvas, double cx, double cy, double radius) {
  if (!(radius > 0.0)) return;
  const double r2 = radius * radius;
  const auto [ry0, ry1] = covered(cy - radius, cy + radius, canvas.height);
  for (int y = ry0; y <= ry1; ++y) {
    const double dy = y + 0.5 - cy;
    const double rem = r2 - dy * dy;
    if (rem < 0.0) continue;
    const double half = std::sqrt(rem);
    const auto [rx0, rx1] = covered(cx - half, cx + half, canvas.width);
    for (int x = rx0; x <= rx1; ++x) {
      const double dx = x + 0.5 - cx;
      if (dx * dx + dy * dy <= r2) canvas.at(x, y) = 1.0;
    }
  }
}

std::vector<double> gaussian_kernel(double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_kernel: sigma must be positive");
  const int radius = static_cast<int>(std::ceil(4.0 * sigma));
  std::vector<double> taps(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    taps[i + radius] = std::exp(-0.5 * (i * i) / (sigma * sigma));
    sum += taps[i + radius];
  }
  for (double& t : taps) t /= sum;
  return taps;
}

Image gaussian_blur(const Image& src, double sigma) {
  const std::vector<double> taps = gaussian_kernel(sigma);
  const int radius = static_cast<int>(taps.size() / 2);
  const int w = src.width, h = src.height;
  const auto& kern = simd::active();

  // Horizontal pass: each tap is one axpy over a zero-padded row.
  Image horiz(w, h);
  std::vector<double> padded(static_cast<std::size_t>(w + 2 * radius), 0.0);
  for (int y = 0; y < h; ++y) {
    std::copy_n(src.pixels.begin() + static_cast<std::ptrdiff_t>(y) * w, w, padded.begin() + radius);
    double* out = horiz.pixels.data() + static_cast<std::size_t>(y) * w;
    for (std::size_t k = 0; k < taps.size(); ++k) kern.axpy(taps[k], padded.data() + k, out, static_cast<std::size_t>(w));
  }

  // Vertical pass: each output row accumulates shifted input rows.
  Image out(w, h);
  for (int y = 0; y < h; ++y) {
    double* dst = out.pixels.data() + static_cast<std::size_t>(y) * w;
    for (int k = -radius; k <= radius; ++k) {
      const int sy = y + k;
      if (sy < 0 || sy >= h) continue;
      kern.axpy(taps[k + radius], horiz.pixels.data() + static_cast<std::size_t>(sy) * w, dst, static_cast<std::size_t>(w));
    }
  }
  for (double& v : out.pixels) v = std::clamp(v, 0.0, 1.0);
  return out;
}

Image house_rocket_mask(double w, double h, double t, int size) {
  Image canvas(size, size);
  const double cx = 0.5 * size;
  const double bottom = size;
  const double top = bottom - h;
  fill_rectangle(canvas, cx - 0.5 * w, top, cx + 0.5 * w, bottom);
  fill_triangle(canvas, cx, top, 0.5 * w, t);
  return canvas;
}

}  // namespace levelset::render
