#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <vector>

#include "levelset/numerics/simplex.hpp"

namespace levelset::io {

class PngError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GrayPixels16 {
  int width = 0;
  int height = 0;
  std::vector<std::uint16_t> pixels;  // full 16-bit range regardless of file depth
};

void write_png_gray8(const Image& image, const std::filesystem::path& path);
void write_png_gray16(int width, int height, std::span<const std::uint16_t> pixels, const std::filesystem::path& path);
/// Reads an 8- or 16-bit grayscale PNG; 8-bit values are widened (v * 257).
GrayPixels16 read_png_gray(const std::filesystem::path& path);

/// Tiles images in a ceil(sqrt(n)) x ceil(sqrt(n)) grid with `gap`-pixel separators.
Image tile_grid(std::span<const Image> images, int gap = 2);

}  // namespace levelset::io
