#include "levelset/nn/reference_pack.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>

#include <nlohmann/json.hpp>

namespace levelset::nn {

namespace {

std::vector<double> read_f32_blob(const std::filesystem::path& path, std::size_t expected) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LswfError("reference pack: cannot open " + path.string());
  const std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() != expected * 4) {
    throw LswfError("reference pack: " + path.string() + " holds " + std::to_string(bytes.size()) + " bytes, expected " +
                    std::to_string(expected * 4));
  }
  std::vector<double> out(expected);
  for (std::size_t i = 0; i < expected; ++i) {
    std::uint32_t bits = 0;
    for (int b = 3; b >= 0; --b) bits = (bits << 8) | static_cast<unsigned char>(bytes[i * 4 + b]);
    out[i] = std::bit_cast<float>(bits);
  }
  return out;
}

}  // namespace

ReferencePack load_reference_pack(const std::filesystem::path& dir) {
  const auto manifest_path = dir / "reference.json";
  std::ifstream in(manifest_path);
  if (!in) throw LswfError("reference pack: cannot open " + manifest_path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw LswfError("reference pack: " + manifest_path.string() + ": " + e.what());
  }

  ReferencePack pack;
  pack.dir = dir;
  try {
    if (j.at("version").get<int>() != 1) throw LswfError("reference pack: unsupported version");
    for (const auto& e : j.at("entries")) {
      ReferenceEntry entry;
      entry.name = e.at("name").get<std::string>();
      entry.model = dir / e.at("model").get<std::string>();
      entry.count = e.at("count").get<std::size_t>();
      entry.input_dim = e.at("input_dim").get<std::size_t>();
      entry.output_dim = e.at("output_dim").get<std::size_t>();
      const std::string output = e.value("output", "final");
      if (output != "final" && output != "logits") throw LswfError("reference pack: unknown output kind '" + output + "'");
      entry.logits = output == "logits";
      entry.inputs = read_f32_blob(dir / e.at("inputs").get<std::string>(), entry.count * entry.input_dim);
      entry.outputs = read_f32_blob(dir / e.at("outputs").get<std::string>(), entry.count * entry.output_dim);
      pack.entries.push_back(std::move(entry));
    }
    if (j.contains("test_accuracy")) pack.test_accuracy = j["test_accuracy"].get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw LswfError("reference pack: " + manifest_path.string() + ": " + e.what());
  }
  return pack;
}

std::vector<double> reference_output(const Network& net, std::span<const double> input, bool logits) {
  if (!logits) return net.forward(input);
  if (net.layers().empty() || net.layers().back().kind != LayerKind::softmax) {
    throw LswfError("reference pack: logits requested but the model has no trailing softmax");
  }
  const ForwardTrace trace = net.forward_trace(input);
  return trace.activations[trace.activations.size() - 2];
}

std::vector<ReferenceCheck> verify_reference_pack(const ReferencePack& pack) {
  std::vector<ReferenceCheck> checks;
  for (const auto& e : pack.entries) {
    const LswfModel model = load_lswf(e.model);
    const Network& net = model.network;
    if (net.input_shape().size() != e.input_dim) {
      throw LswfError("reference pack: " + e.name + " input_dim " + std::to_string(e.input_dim) + " does not match model");
    }
    ReferenceCheck check{e.name, e.count, 0.0};
    for (std::size_t i = 0; i < e.count; ++i) {
      const std::span<const double> x(e.inputs.data() + i * e.input_dim, e.input_dim);
      const auto y = reference_output(net, x, e.logits);
      if (y.size() != e.output_dim) throw LswfError("reference pack: " + e.name + " output_dim does not match model");
      for (std::size_t k = 0; k < y.size(); ++k) {
        const double err = std::abs(y[k] - e.outputs[i * e.output_dim + k]);
        check.max_abs_error = std::isnan(err) ? err : std::max(check.max_abs_error, err);
      }
    }
    checks.push_back(check);
  }
  return checks;
}

}  // namespace levelset::nn
