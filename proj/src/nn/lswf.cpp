#include "levelset/nn/lswf.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

namespace levelset::nn {
namespace {

static_assert(std::endian::native == std::endian::little, "LSWF codec assumes a little-endian host");

class Writer {
 public:
  void u8(std::uint8_t v) { bytes_.push_back(v); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) bytes_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f32(double v) { u32(std::bit_cast<std::uint32_t>(static_cast<float>(v))); }
  std::vector<std::uint8_t> take() { return std::move(bytes_); }

 private:
  std::vector<std::uint8_t> bytes_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  std::uint8_t u8(const char* what) {
    need(1, what);
    return bytes_[pos_++];
  }
  std::uint32_t u32(const char* what) {
    need(4, what);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes_[pos_ + i]) << (8 * i);
    pos_ += 4;
    return v;
  }
  void f32_into(std::vector<double>& out, std::size_t count, const std::string& what) {
    need(count * 4, what.c_str());
    out.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
      std::uint32_t raw = 0;
      for (int b = 0; b < 4; ++b) raw |= static_cast<std::uint32_t>(bytes_[pos_ + b]) << (8 * b);
      pos_ += 4;
      const float f = std::bit_cast<float>(raw);
      if (!std::isfinite(f)) throw LswfError("LSWF: non-finite parameter in " + what);
      out[i] = f;
    }
  }
  std::size_t remaining() const { return bytes_.size() - pos_; }
  std::size_t position() const { return pos_; }

 private:
  void need(std::size_t n, const char* what) const {
    if (bytes_.size() - pos_ < n) {
      throw LswfError("LSWF: truncated file while reading " + std::string(what) + " at byte " + std::to_string(pos_));
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

// Largest dimension accepted from a header; guards allocations on corrupt files.
constexpr std::uint32_t kMaxDim = 1u << 20;

std::uint32_t checked_dim(Reader& r, const std::string& what) {
  const std::uint32_t v = r.u32(what.c_str());
  if (v > kMaxDim) throw LswfError("LSWF: implausible " + what + " " + std::to_string(v));
  return v;
}

}  // namespace

std::vector<std::uint8_t> encode_lswf(const Network& net, ModelKind kind) {
  Writer w;
  for (char c : std::string("LSWF")) w.u8(static_cast<std::uint8_t>(c));
  w.u32(kLswfVersion);
  w.u8(static_cast<std::uint8_t>(kind));
  w.u32(static_cast<std::uint32_t>(net.input_shape().size()));
  w.u32(static_cast<std::uint32_t>(net.layers().size()));
  for (const Layer& l : net.layers()) {
    w.u8(static_cast<std::uint8_t>(l.kind));
    switch (l.kind) {
      case LayerKind::dense:
        w.u32(static_cast<std::uint32_t>(l.in));
        w.u32(static_cast<std::uint32_t>(l.out));
        break;
      case LayerKind::conv:
      case LayerKind::conv_transpose:
        w.u32(static_cast<std::uint32_t>(l.in));
        w.u32(static_cast<std::uint32_t>(l.out));
        w.u32(static_cast<std::uint32_t>(l.kernel));
        w.u32(static_cast<std::uint32_t>(l.stride));
        w.u32(static_cast<std::uint32_t>(l.pad));
        break;
      default:
        break;
    }
    for (double v : l.weights) w.f32(v);
    for (double v : l.bias) w.f32(v);
  }
  return w.take();
}

LswfModel decode_lswf(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  char magic[4];
  for (char& c : magic) c = static_cast<char>(r.u8("magic"));
  if (std::memcmp(magic, "LSWF", 4) != 0) throw LswfError("LSWF: bad magic (not an LSWF file)");
  const std::uint32_t version = r.u32("version");
  if (version != kLswfVersion) {
    throw LswfError("LSWF: unsupported version " + std::to_string(version) + " (expected " +
                    std::to_string(kLswfVersion) + ")");
  }
  const std::uint8_t kind_tag = r.u8("model kind");
  if (kind_tag > 1) throw LswfError("LSWF: unknown model kind " + std::to_string(kind_tag));
  const auto kind = static_cast<ModelKind>(kind_tag);
  const std::uint32_t input_dim = checked_dim(r, "input dim");
  if (input_dim == 0) throw LswfError("LSWF: input dim must be positive");
  const std::uint32_t layer_count = checked_dim(r, "layer count");

  std::vector<Layer> layers;
  layers.reserve(layer_count);
  for (std::uint32_t i = 0; i < layer_count; ++i) {
    const std::string where = "layer " + std::to_string(i);
    const std::uint8_t tag = r.u8(where.c_str());
    if (tag > static_cast<std::uint8_t>(LayerKind::maxpool2x2)) {
      throw LswfError("LSWF: " + where + " has unsupported kind " + std::to_string(tag));
    }
    Layer l;
    l.kind = static_cast<LayerKind>(tag);
    if (l.kind == LayerKind::dense) {
      l.in = static_cast<int>(checked_dim(r, where + " in"));
      l.out = static_cast<int>(checked_dim(r, where + " out"));
    } else if (l.kind == LayerKind::conv || l.kind == LayerKind::conv_transpose) {
      l.in = static_cast<int>(checked_dim(r, where + " in channels"));
      l.out = static_cast<int>(checked_dim(r, where + " out channels"));
      l.kernel = static_cast<int>(checked_dim(r, where + " kernel"));
      l.stride = static_cast<int>(checked_dim(r, where + " stride"));
      l.pad = static_cast<int>(checked_dim(r, where + " pad"));
    }
    if (has_parameters(l.kind)) {
      const std::size_t wc = l.weight_count();
      if (wc * 4 > r.remaining()) {
        throw LswfError("LSWF: truncated file, " + where + " declares " + std::to_string(wc) + " weights but only " +
                        std::to_string(r.remaining()) + " bytes remain");
      }
      r.f32_into(l.weights, wc, where + " weights");
      r.f32_into(l.bias, l.bias_count(), where + " biases");
    }
    layers.push_back(std::move(l));
  }
  if (r.remaining() != 0) {
    throw LswfError("LSWF: " + std::to_string(r.remaining()) + " trailing bytes after last layer");
  }

  Shape input{static_cast<int>(input_dim), 1, 1};
  if (kind == ModelKind::classifier) {
    const auto side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(input_dim))));
    if (static_cast<std::uint32_t>(side * side) != input_dim) {
      throw LswfError("LSWF: classifier input dim " + std::to_string(input_dim) + " is not a square image");
    }
    input = Shape{1, side, side};
  }
  try {
    return LswfModel{kind, Network(input, std::move(layers))};
  } catch (const std::invalid_argument& e) {
    throw LswfError(std::string("LSWF: shape mismatch: ") + e.what());
  }
}

void save_lswf(const Network& net, ModelKind kind, const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = encode_lswf(net, kind);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw LswfError("LSWF: cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw LswfError("LSWF: write failed for " + path.string());
}

LswfModel load_lswf(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LswfError("LSWF: cannot open " + path.string());
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  try {
    return decode_lswf(bytes);
  } catch (const LswfError& e) {
    throw LswfError(path.string() + ": " + e.what());
  }
}

}  // namespace levelset::nn
