#include "levelset/io/png.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>

namespace levelset::io {
namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

// libpng reports errors by longjmp; the handlers copy the message out first.
// The setjmp frames below hold no objects with destructors.
struct ErrorSink {
  char message[256] = "unknown libpng error";
};

void on_png_error(png_structp png, png_const_charp msg) {
  auto* sink = static_cast<ErrorSink*>(png_get_error_ptr(png));
  std::snprintf(sink->message, sizeof sink->message, "%s", msg);
  png_longjmp(png, 1);
}
void on_png_warning(png_structp, png_const_charp) {}

bool write_impl(std::FILE* fp, int width, int height, int depth, png_bytepp rows, ErrorSink* sink) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, sink, on_png_error, on_png_warning);
  if (!png) return false;
  png_infop info = png_create_info_struct(png);
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    return false;
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), depth, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows);
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

void write_rows(const std::filesystem::path& path, int width, int height, int depth, std::vector<png_byte>& data) {
  const std::size_t stride = data.size() / static_cast<std::size_t>(height);
  std::vector<png_bytep> rows(static_cast<std::size_t>(height));
  for (int y = 0; y < height; ++y) rows[y] = data.data() + static_cast<std::size_t>(y) * stride;
  FilePtr fp(std::fopen(path.c_str(), "wb"));
  if (!fp) throw PngError("cannot open " + path.string() + " for writing");
  ErrorSink sink;
  if (!write_impl(fp.get(), width, height, depth, rows.data(), &sink)) {
    throw PngError(path.string() + ": " + sink.message);
  }
  if (std::fflush(fp.get()) != 0) throw PngError("write failed for " + path.string());
}

enum class ReadStatus { ok, libpng_error, bad_format };

ReadStatus read_impl(std::FILE* fp, GrayPixels16* out, std::vector<png_byte>* row, ErrorSink* sink) {
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, sink, on_png_error, on_png_warning);
  if (!png) return ReadStatus::libpng_error;
  png_infop info = png_create_info_struct(png);
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    return ReadStatus::libpng_error;
  }
  png_init_io(png, fp);
  png_set_sig_bytes(png, 8);
  png_read_info(png, info);
  const int color = png_get_color_type(png, info);
  const int depth = png_get_bit_depth(png, info);
  if (color != PNG_COLOR_TYPE_GRAY || (depth != 8 && depth != 16) ||
      png_get_interlace_type(png, info) != PNG_INTERLACE_NONE) {
    png_destroy_read_struct(&png, &info, nullptr);
    return ReadStatus::bad_format;
  }
  out->width = static_cast<int>(png_get_image_width(png, info));
  out->height = static_cast<int>(png_get_image_height(png, info));
  row->resize(png_get_rowbytes(png, info));
  out->pixels.resize(static_cast<std::size_t>(out->width) * static_cast<std::size_t>(out->height));
  for (int y = 0; y < out->height; ++y) {
    png_read_row(png, row->data(), nullptr);
    const png_byte* r = row->data();
    std::uint16_t* dst = out->pixels.data() + static_cast<std::size_t>(y) * out->width;
    for (int x = 0; x < out->width; ++x) {
      dst[x] = depth == 16 ? static_cast<std::uint16_t>((r[2 * x] << 8) | r[2 * x + 1]) : static_cast<std::uint16_t>(r[x] * 257);
    }
  }
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return ReadStatus::ok;
}

}  // namespace

void write_png_gray8(const Image& image, const std::filesystem::path& path) {
  std::vector<png_byte> data(image.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    data[i] = static_cast<png_byte>(std::lround(std::clamp(image.pixels[i], 0.0, 1.0) * 255.0));
  }
  write_rows(path, image.width, image.height, 8, data);
}

void write_png_gray16(int width, int height, std::span<const std::uint16_t> pixels, const std::filesystem::path& path) {
  if (pixels.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw PngError("write_png_gray16: pixel count mismatch");
  }
  std::vector<png_byte> data(pixels.size() * 2);
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    data[2 * i] = static_cast<png_byte>(pixels[i] >> 8);  // PNG samples are big-endian
    data[2 * i + 1] = static_cast<png_byte>(pixels[i] & 0xFF);
  }
  write_rows(path, width, height, 16, data);
}

GrayPixels16 read_png_gray(const std::filesystem::path& path) {
  FilePtr fp(std::fopen(path.c_str(), "rb"));
  if (!fp) throw PngError("cannot open " + path.string());
  png_byte sig[8];
  if (std::fread(sig, 1, 8, fp.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0) {
    throw PngError(path.string() + ": not a PNG file");
  }
  GrayPixels16 out;
  std::vector<png_byte> row;
  ErrorSink sink;
  switch (read_impl(fp.get(), &out, &row, &sink)) {
    case ReadStatus::ok:
      return out;
    case ReadStatus::bad_format:
      throw PngError(path.string() + ": expected non-interlaced 8- or 16-bit grayscale");
    case ReadStatus::libpng_error:
      break;
  }
  throw PngError(path.string() + ": " + sink.message);
}

Image tile_grid(std::span<const Image> images, int gap) {
  if (images.empty()) return Image(1, 1);
  const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(images.size()))));
  const int rows = static_cast<int>((images.size() + cols - 1) / cols);
  const int w = images.front().width, h = images.front().height;
  Image grid(cols * w + (cols - 1) * gap, rows * h + (rows - 1) * gap, 0.0);
  for (std::size_t i = 0; i < images.size(); ++i) {
    const int ox = static_cast<int>(i % cols) * (w + gap);
    const int oy = static_cast<int>(i / cols) * (h + gap);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) grid.at(ox + x, oy + y) = images[i].at(x, y);
    }
  }
  return grid;
}

}  // namespace levelset::io
