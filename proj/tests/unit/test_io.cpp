#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "levelset/io/png.hpp"
#include "levelset/io/sample_io.hpp"
#include "levelset/nn/dataset.hpp"

using namespace levelset;

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("levelset_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("16-bit PNG round trip") {
  const auto dir = fresh_dir("png");
  std::vector<std::uint16_t> px(7 * 5);
  for (std::size_t i = 0; i < px.size(); ++i) px[i] = static_cast<std::uint16_t>(i * 1871 + 3);
  io::write_png_gray16(7, 5, px, dir / "a.png");
  const auto back = io::read_png_gray(dir / "a.png");
  CHECK(back.width == 7);
  CHECK(back.height == 5);
  CHECK(back.pixels == px);
}

TEST_CASE("8-bit PNG is widened") {
  const auto dir = fresh_dir("png8");
  Image img(3, 2);
  img.pixels = {0.0, 1.0, 0.5, 0.25, 0.75, 1.0};
  io::write_png_gray8(img, dir / "b.png");
  const auto back = io::read_png_gray(dir / "b.png");
  CHECK(back.pixels[0] == 0);
  CHECK(back.pixels[1] == 65535);
  CHECK(back.pixels[2] % 257 == 0);
}

TEST_CASE("corrupted PNG raises an error") {
  const auto dir = fresh_dir("badpng");
  {
    std::ofstream f(dir / "bad.png", std::ios::binary);
    f << "\x89PNG\r\n\x1a\n garbage that is not a png stream";
  }
  CHECK_THROWS_AS(io::read_png_gray(dir / "bad.png"), io::PngError);
  CHECK_THROWS_AS(io::read_png_gray(dir / "missing.png"), io::PngError);

  std::vector<std::uint16_t> px(64 * 64, 1000);
  io::write_png_gray16(64, 64, px, dir / "trunc.png");
  std::filesystem::resize_file(dir / "trunc.png", std::filesystem::file_size(dir / "trunc.png") / 2);
  CHECK_THROWS_AS(io::read_png_gray(dir / "trunc.png"), io::PngError);
}

TEST_CASE("sample grid layout") {
  std::vector<Image> images(10, Image(4, 3));
  for (auto& im : images) std::fill(im.pixels.begin(), im.pixels.end(), 1.0);
  const Image grid = io::tile_grid(images, 2);
  CHECK(grid.width == 4 * 4 + 3 * 2);
  CHECK(grid.height == 3 * 3 + 2 * 2);
  CHECK(grid.valid());
  CHECK(grid.at(0, 0) == 1.0);
  CHECK(grid.at(4, 0) == 0.0);  // gap column
  CHECK(io::tile_grid(std::vector<Image>(1, Image(4, 3))).width == 4);
}

TEST_CASE("dataset directory round trip") {
  const auto dir = fresh_dir("dataset");
  Rng rng(6);
  const auto data = nn::generate_dataset(12, rng);
  io::write_dataset_dir(data, dir);
  CHECK(std::filesystem::exists(dir / "img_00000.png"));
  CHECK(std::filesystem::exists(dir / "img_00011.png"));
  const auto back = io::read_dataset_dir(dir);
  REQUIRE(back.size() == 12);
  CHECK(back.labels() == data.labels());
  for (std::size_t i = 0; i < 12; ++i) {
    const auto a = data.quantized(i), b = back.quantized(i);
    CHECK(std::equal(a.begin(), a.end(), b.begin(), b.end()));
    CHECK(back.image(i) == data.image(i));
  }

  SUBCASE("a corrupted image is named") {
    std::filesystem::resize_file(dir / "img_00003.png", 40);
    CHECK_THROWS_WITH_AS(io::read_dataset_dir(dir), doctest::Contains("img_00003.png"), io::FormatError);
  }
  SUBCASE("a bad label is rejected") {
    std::ofstream f(dir / "labels.csv", std::ios::app);
    f << "img_00000.png,7\n";
    f.close();
    CHECK_THROWS_AS(io::read_dataset_dir(dir), io::FormatError);
  }
}
