#pragma once

// Reference pack: recorded input/output pairs for exported LSWF models.
//
// <dir>/reference.json:
//   {"version": 1,
//    "entries": [{"name": "decoder", "model": "decoder.lswf",
//                 "inputs": "decoder_inputs.f32", "outputs": "decoder_outputs.f32",
//                 "count": 10, "input_dim": 5, "output_dim": 784, "output": "final"}, ...],
//    "test_accuracy": 0.981}          (optional)
// Blobs are raw little-endian f32, row-major [count][dim]. "output" is "final"
// for the network output or "logits" for the input of a trailing softmax.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "levelset/nn/lswf.hpp"

namespace levelset::nn {

struct ReferenceEntry {
  std::string name;
  std::filesystem::path model;
  std::size_t count = 0;
  std::size_t input_dim = 0;
  std::size_t output_dim = 0;
  bool logits = false;
  std::vector<double> inputs;   // count * input_dim
  std::vector<double> outputs;  // count * output_dim
};

struct ReferencePack {
  std::filesystem::path dir;
  std::vector<ReferenceEntry> entries;
  std::optional<double> test_accuracy;
};

/// Throws LswfError on a malformed manifest or blob.
ReferencePack load_reference_pack(const std::filesystem::path& dir);

/// Output the pack compares against: the final activation, or the logits
/// feeding a trailing softmax.
std::vector<double> reference_output(const Network& net, std::span<const double> input, bool logits);

struct ReferenceCheck {
  std::string name;
  std::size_t count = 0;
  double max_abs_error = 0.0;
};

/// Loads each entry's model and reports the largest per-element deviation.
std::vector<ReferenceCheck> verify_reference_pack(const ReferencePack& pack);

}  // namespace levelset::nn
