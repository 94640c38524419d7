#pragma once

// LSWF ("level-set weight file") reader and writer.
//
// Little-endian layout:
//   magic "LSWF" | version u32 (=1) | model kind u8 (0 decoder, 1 classifier)
//   | input dim u32 | layer count u32
// then per layer:
//   kind u8 | shape header | f32 parameters (weights row-major, then biases)
// Shape headers:
//   dense:                 in u32, out u32
//   conv, conv-transpose:  in_channels u32, out_channels u32, kernel u32, stride u32, pad u32
//   every other kind:      empty
// Classifier inputs are square single-channel images (input dim = side^2).

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <vector>

#include "levelset/nn/network.hpp"

namespace levelset::nn {

enum class ModelKind : std::uint8_t { decoder = 0, classifier = 1 };

inline constexpr std::uint32_t kLswfVersion = 1;

class LswfError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LswfModel {
  ModelKind kind = ModelKind::classifier;
  Network network;
};

std::vector<std::uint8_t> encode_lswf(const Network& net, ModelKind kind);
LswfModel decode_lswf(std::span<const std::uint8_t> bytes);

void save_lswf(const Network& net, ModelKind kind, const std::filesystem::path& path);
LswfModel load_lswf(const std::filesystem::path& path);

}  // namespace levelset::nn
