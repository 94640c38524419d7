#include <bit>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <vector>

#include "doctest.h"
#include "levelset/nn/classifier.hpp"
#include "levelset/nn/lswf.hpp"
#include "levelset/nn/reference_pack.hpp"
#include "levelset/numerics/rng.hpp"
#include "levelset/worlds/decoder.hpp"

using namespace levelset;
using namespace levelset::nn;

namespace {

// Minimal little-endian writer, independent of encode_lswf.
struct Bytes {
  std::vector<std::uint8_t> b;
  void u8(std::uint8_t v) { b.push_back(v); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) b.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f32(float v) { u32(std::bit_cast<std::uint32_t>(v)); }
};

Network random_classifier(std::uint64_t seed) {
  Network net({1, 8, 8}, {Layer::conv(1, 2, 3, 1, 1), Layer::activation(LayerKind::relu),
                          Layer::activation(LayerKind::maxpool2x2), Layer::activation(LayerKind::flatten),
                          Layer::dense(32, 3), Layer::activation(LayerKind::softmax)});
  Rng rng(seed);
  kaiming_uniform_init(net, rng);
  for (auto& l : net.mutable_layers())
    for (double& b : l.bias) b = static_cast<float>(0.1 * rng.normal());
  return net;
}

std::filesystem::path temp_path(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "levelset_test_lswf";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("LSWF round trip is bitwise") {
  const Network net = random_classifier(1);
  const auto bytes = encode_lswf(net, ModelKind::classifier);
  const LswfModel back = decode_lswf(bytes);
  CHECK(back.kind == ModelKind::classifier);
  REQUIRE(back.network.layers().size() == net.layers().size());
  for (std::size_t i = 0; i < net.layers().size(); ++i) {
    CHECK(back.network.layers()[i].kind == net.layers()[i].kind);
    CHECK(back.network.layers()[i].weights == net.layers()[i].weights);
    CHECK(back.network.layers()[i].bias == net.layers()[i].bias);
  }
  CHECK(encode_lswf(back.network, back.kind) == bytes);

  const auto path = temp_path("clf.lswf");
  Classifier(net).save(path);
  const Classifier loaded = Classifier::load(path);
  Image img(8, 8);
  for (std::size_t i = 0; i < img.size(); ++i) img.pixels[i] = (i * 37 % 64) / 64.0;
  CHECK(loaded.predict(img) == Classifier(net).predict(img));
}

TEST_CASE("decoder written by an independent writer") {
  // dense(2 -> 4), sigmoid; output read as a 2x2 image.
  Bytes w;
  for (char c : std::string("LSWF")) w.u8(static_cast<std::uint8_t>(c));
  w.u32(1);
  w.u8(0);
  w.u32(2);
  w.u32(2);
  w.u8(0);
  w.u32(2);
  w.u32(4);
  const float weights[8] = {1, 0, 0, 1, -1, 0, 0.5f, 0.5f};
  for (float f : weights) w.f32(f);
  for (float f : {0.0f, 0.0f, 1.0f, -1.0f}) w.f32(f);
  w.u8(4);

  const LswfModel m = decode_lswf(w.b);
  CHECK(m.kind == ModelKind::decoder);
  CHECK(encode_lswf(m.network, m.kind) == w.b);
  DecoderWorld world(m.network);
  CHECK(world.latent_dim() == 2);
  CHECK(world.image_width() == 2);
  const Image img = world.reconstruct(std::vector<double>{2.0, -4.0});
  auto sig = [](double x) { return 1.0 / (1.0 + std::exp(-x)); };
  CHECK(img.pixels[0] == doctest::Approx(sig(2.0)));
  CHECK(img.pixels[1] == doctest::Approx(sig(-4.0)));
  CHECK(img.pixels[2] == doctest::Approx(sig(-2.0 + 1.0)));
  CHECK(img.pixels[3] == doctest::Approx(sig(-1.0 - 1.0)));
}

TEST_CASE("malformed LSWF input is rejected with a description") {
  const auto good = encode_lswf(random_classifier(2), ModelKind::classifier);

  SUBCASE("every truncation") {
    for (std::size_t len = 0; len < good.size(); len += (len < 64 ? 1 : 37)) {
      CAPTURE(len);
      CHECK_THROWS_AS(decode_lswf(std::span(good).first(len)), LswfError);
    }
    CHECK_THROWS_WITH(decode_lswf(std::span(good).first(good.size() - 1)), doctest::Contains("truncated"));
  }
  SUBCASE("bad magic") {
    auto bad = good;
    bad[0] = 'X';
    CHECK_THROWS_WITH_AS(decode_lswf(bad), doctest::Contains("magic"), LswfError);
  }
  SUBCASE("bad version") {
    auto bad = good;
    bad[4] = 2;
    CHECK_THROWS_WITH_AS(decode_lswf(bad), doctest::Contains("version"), LswfError);
  }
  SUBCASE("unknown layer kind") {
    auto bad = good;
    bad[17] = 42;
    CHECK_THROWS_WITH_AS(decode_lswf(bad), doctest::Contains("kind"), LswfError);
  }
  SUBCASE("trailing bytes") {
    auto bad = good;
    bad.push_back(0);
    CHECK_THROWS_WITH_AS(decode_lswf(bad), doctest::Contains("trailing"), LswfError);
  }
  SUBCASE("shape mismatch") {
    Bytes w;
    for (char c : std::string("LSWF")) w.u8(static_cast<std::uint8_t>(c));
    w.u32(1);
    w.u8(0);
    w.u32(3);
    w.u32(1);
    w.u8(0);
    w.u32(4);  // declares 4 inputs, network feeds 3
    w.u32(1);
    for (int i = 0; i < 5; ++i) w.f32(0.0f);
    CHECK_THROWS_WITH_AS(decode_lswf(w.b), doctest::Contains("layer 0"), LswfError);
  }
  SUBCASE("missing file") { CHECK_THROWS_AS(load_lswf(temp_path("does_not_exist.lswf")), LswfError); }
  SUBCASE("decoder file loaded as a classifier") {
    const auto path = temp_path("dec.lswf");
    save_lswf(Network({2, 1, 1}, {Layer::dense(2, 4), Layer::activation(LayerKind::sigmoid)}), ModelKind::decoder, path);
    CHECK_THROWS(Classifier::load(path));
  }
}

TEST_CASE("reference pack from an independent deep-learning stack") {
  const ReferencePack pack = load_reference_pack(std::filesystem::path(LEVELSET_FIXTURE_DIR) / "reference_pack");
  REQUIRE(pack.entries.size() == 2);
  for (const auto& e : pack.entries) CHECK(e.count == 10);
  const auto checks = verify_reference_pack(pack);
  for (const auto& c : checks) {
    CAPTURE(c.name);
    CHECK(c.max_abs_error <= 1e-4);
  }
  // The loaded models behave like ordinary worlds and classifiers.
  DecoderWorld world = DecoderWorld::load(pack.entries[0].model);
  CHECK(world.latent_dim() == 5);
  CHECK(world.image_width() == 8);
  const Classifier clf = Classifier::load(pack.entries[1].model);
  CHECK(clf.num_classes() == 3);

  SUBCASE("a corrupted blob is detected") {
    const auto dir = temp_path("pack");
    std::filesystem::remove_all(dir);
    std::filesystem::copy(pack.dir, dir);
    std::filesystem::resize_file(dir / "decoder_outputs.f32", 100);
    CHECK_THROWS_WITH_AS(load_reference_pack(dir), doctest::Contains("decoder_outputs.f32"), LswfError);
  }
}
