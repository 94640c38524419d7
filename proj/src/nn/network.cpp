#include "levelset/nn/network.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "levelset/simd/kernels.hpp"

namespace levelset::nn {
namespace {

std::invalid_argument layer_error(std::size_t index, const Layer& layer, const std::string& what) {
  return std::invalid_argument("layer " + std::to_string(index) + " (" + to_string(layer.kind) + "): " + what);
}

int square_side(std::size_t n) {
  const auto s = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  return s * s == n ? static_cast<int>(s) : -1;
}

// Resolve the (channels, h, w) view a conv-like layer sees.
Shape conv_input(const Shape& in, const Layer& layer, std::size_t index) {
  if (in.channels == layer.in) return in;
  if (in.is_flat() && layer.in > 0 && in.size() % static_cast<std::size_t>(layer.in) == 0) {
    const int side = square_side(in.size() / static_cast<std::size_t>(layer.in));
    if (side > 0) return Shape{layer.in, side, side};
  }
  throw layer_error(index, layer, "input " + to_string(in) + " does not match " + std::to_string(layer.in) + " input channels");
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

struct ConvGeometry {
  int in_c, in_h, in_w, out_c, out_h, out_w, k, stride, pad;
};

ConvGeometry geometry(const Shape& in, const Shape& out, const Layer& layer) {
  return {in.channels, in.height, in.width, out.channels, out.height, out.width, layer.kernel, layer.stride, layer.pad};
}

// Zero-padded copy of a (c, h, w) map: (c, h + 2p, w + 2p).
std::vector<double> pad_planes(std::span<const double> in, int c, int h, int w, int p) {
  const int hp = h + 2 * p, wp = w + 2 * p;
  std::vector<double> padded(static_cast<std::size_t>(c) * hp * wp, 0.0);
  for (int ch = 0; ch < c; ++ch) {
    for (int y = 0; y < h; ++y) {
      const double* src = in.data() + (static_cast<std::size_t>(ch) * h + y) * w;
      double* dst = padded.data() + (static_cast<std::size_t>(ch) * hp + y + p) * wp + p;
      std::copy(src, src + w, dst);
    }
  }
  return padded;
}

// Stride-1 convolution. Each (oc, ic, ky, kx) term is one long axpy over the
// padded plane; output rows carry (wp - out_w) junk columns that are dropped.
void conv_forward_unit_stride(const ConvGeometry& g, const Layer& layer, std::span<const double> in,
                              std::span<double> out) {
  const auto& kern = simd::active();
  const int hp = g.in_h + 2 * g.pad, wp = g.in_w + 2 * g.pad;
  const std::vector<double> padded = pad_planes(in, g.in_c, g.in_h, g.in_w, g.pad);
  const std::size_t span_len = static_cast<std::size_t>(g.out_h - 1) * wp + g.out_w;
  std::vector<double> acc(static_cast<std::size_t>(g.out_h) * wp);
  const std::size_t plane = static_cast<std::size_t>(hp) * wp;
  for (int oc = 0; oc < g.out_c; ++oc) {
    std::fill(acc.begin(), acc.end(), 0.0);
    for (int ic = 0; ic < g.in_c; ++ic) {
      const double* w = layer.weights.data() + (static_cast<std::size_t>(oc) * g.in_c + ic) * g.k * g.k;
      const double* src = padded.data() + ic * plane;
      for (int ky = 0; ky < g.k; ++ky) {
        for (int kx = 0; kx < g.k; ++kx) {
          kern.axpy(w[ky * g.k + kx], src + ky * wp + kx, acc.data(), span_len);
        }
      }
    }
    double* dst = out.data() + static_cast<std::size_t>(oc) * g.out_h * g.out_w;
    const double b = layer.bias[oc];
    for (int y = 0; y < g.out_h; ++y) {
      for (int x = 0; x < g.out_w; ++x) dst[y * g.out_w + x] = acc[static_cast<std::size_t>(y) * wp + x] + b;
    }
  }
}

void conv_forward_strided(const ConvGeometry& g, const Layer& layer, std::span<const double> in, std::span<double> out) {
  for (int oc = 0; oc < g.out_c; ++oc) {
    for (int y = 0; y < g.out_h; ++y) {
      for (int x = 0; x < g.out_w; ++x) {
        double sum = layer.bias[oc];
        for (int ic = 0; ic < g.in_c; ++ic) {
          const double* w = layer.weights.data() + (static_cast<std::size_t>(oc) * g.in_c + ic) * g.k * g.k;
          for (int ky = 0; ky < g.k; ++ky) {
            const int iy = y * g.stride - g.pad + ky;
            if (iy < 0 || iy >= g.in_h) continue;
            for (int kx = 0; kx < g.k; ++kx) {
              const int ix = x * g.stride - g.pad + kx;
              if (ix < 0 || ix >= g.in_w) continue;
              sum += w[ky * g.k + kx] * in[(static_cast<std::size_t>(ic) * g.in_h + iy) * g.in_w + ix];
            }
          }
        }
        out[(static_cast<std::size_t>(oc) * g.out_h + y) * g.out_w + x] = sum;
      }
    }
  }
}

void conv_backward_unit_stride(const ConvGeometry& g, const Layer& layer, std::span<const double> in,
                               std::span<const double> gout, std::vector<double>& gw, std::vector<double>& gb,
                               std::span<double> gin) {
  const auto& kern = simd::active();
  const int hp = g.in_h + 2 * g.pad, wp = g.in_w + 2 * g.pad;
  const std::size_t plane = static_cast<std::size_t>(hp) * wp;
  const std::vector<double> padded = pad_planes(in, g.in_c, g.in_h, g.in_w, g.pad);
  std::vector<double> gpad(padded.size(), 0.0);
  const std::size_t span_len = static_cast<std::size_t>(g.out_h - 1) * wp + g.out_w;
  std::vector<double> gbuf(static_cast<std::size_t>(g.out_h) * wp, 0.0);
  for (int oc = 0; oc < g.out_c; ++oc) {
    const double* go = gout.data() + static_cast<std::size_t>(oc) * g.out_h * g.out_w;
    double bsum = 0.0;
    for (int y = 0; y < g.out_h; ++y) {
      for (int x = 0; x < g.out_w; ++x) {
        gbuf[static_cast<std::size_t>(y) * wp + x] = go[y * g.out_w + x];
        bsum += go[y * g.out_w + x];
      }
    }
    gb[oc] += bsum;
    for (int ic = 0; ic < g.in_c; ++ic) {
      const std::size_t woff = (static_cast<std::size_t>(oc) * g.in_c + ic) * g.k * g.k;
      const double* src = padded.data() + ic * plane;
      double* gsrc = gpad.data() + ic * plane;
      for (int ky = 0; ky < g.k; ++ky) {
        for (int kx = 0; kx < g.k; ++kx) {
          const std::size_t off = static_cast<std::size_t>(ky) * wp + kx;
          gw[woff + ky * g.k + kx] += kern.dot(gbuf.data(), src + off, span_len);
          kern.axpy(layer.weights[woff + ky * g.k + kx], gbuf.data(), gsrc + off, span_len);
        }
      }
    }
  }
  for (int ic = 0; ic < g.in_c; ++ic) {
    for (int y = 0; y < g.in_h; ++y) {
      const double* src = gpad.data() + ic * plane + static_cast<std::size_t>(y + g.pad) * wp + g.pad;
      std::copy(src, src + g.in_w, gin.data() + (static_cast<std::size_t>(ic) * g.in_h + y) * g.in_w);
    }
  }
}

void conv_backward_strided(const ConvGeometry& g, const Layer& layer, std::span<const double> in,
                           std::span<const double> gout, std::vector<double>& gw, std::vector<double>& gb,
                           std::span<double> gin) {
  std::fill(gin.begin(), gin.end(), 0.0);
  for (int oc = 0; oc < g.out_c; ++oc) {
    for (int y = 0; y < g.out_h; ++y) {
      for (int x = 0; x < g.out_w; ++x) {
        const double go = gout[(static_cast<std::size_t>(oc) * g.out_h + y) * g.out_w + x];
        gb[oc] += go;
        for (int ic = 0; ic < g.in_c; ++ic) {
          const std::size_t woff = (static_cast<std::size_t>(oc) * g.in_c + ic) * g.k * g.k;
          for (int ky = 0; ky < g.k; ++ky) {
            const int iy = y * g.stride - g.pad + ky;
            if (iy < 0 || iy >= g.in_h) continue;
            for (int kx = 0; kx < g.k; ++kx) {
              const int ix = x * g.stride - g.pad + kx;
              if (ix < 0 || ix >= g.in_w) continue;
              const std::size_t ii = (static_cast<std::size_t>(ic) * g.in_h + iy) * g.in_w + ix;
              gw[woff + ky * g.k + kx] += go * in[ii];
              gin[ii] += go * layer.weights[woff + ky * g.k + kx];
            }
          }
        }
      }
    }
  }
}

// Transposed convolution scatters each input pixel through the kernel.
void conv_transpose_forward(const ConvGeometry& g, const Layer& layer, std::span<const double> in,
                            std::span<double> out) {
  for (int oc = 0; oc < g.out_c; ++oc) {
    std::fill_n(out.begin() + static_cast<std::ptrdiff_t>(oc) * g.out_h * g.out_w, g.out_h * g.out_w, layer.bias[oc]);
  }
  for (int ic = 0; ic < g.in_c; ++ic) {
    for (int y = 0; y < g.in_h; ++y) {
      for (int x = 0; x < g.in_w; ++x) {
        const double v = in[(static_cast<std::size_t>(ic) * g.in_h + y) * g.in_w + x];
        for (int oc = 0; oc < g.out_c; ++oc) {
          const double* w = layer.weights.data() + (static_cast<std::size_t>(ic) * g.out_c + oc) * g.k * g.k;
          for (int ky = 0; ky < g.k; ++ky) {
            const int oy = y * g.stride - g.pad + ky;
            if (oy < 0 || oy >= g.out_h) continue;
            for (int kx = 0; kx < g.k; ++kx) {
              const int ox = x * g.stride - g.pad + kx;
              if (ox < 0 || ox >= g.out_w) continue;
              out[(static_cast<std::size_t>(oc) * g.out_h + oy) * g.out_w + ox] += w[ky * g.k + kx] * v;
            }
          }
        }
      }
    }
  }
}

void conv_transpose_backward(const ConvGeometry& g, const Layer& layer, std::span<const double> in,
                             std::span<const double> gout, std::vector<double>& gw, std::vector<double>& gb,
                             std::span<double> gin) {
  for (int oc = 0; oc < g.out_c; ++oc) {
    double s = 0.0;
    for (int i = 0; i < g.out_h * g.out_w; ++i) s += gout[static_cast<std::size_t>(oc) * g.out_h * g.out_w + i];
    gb[oc] += s;
  }
  for (int ic = 0; ic < g.in_c; ++ic) {
    for (int y = 0; y < g.in_h; ++y) {
      for (int x = 0; x < g.in_w; ++x) {
        const std::size_t ii = (static_cast<std::size_t>(ic) * g.in_h + y) * g.in_w + x;
        const double v = in[ii];
        double acc = 0.0;
        for (int oc = 0; oc < g.out_c; ++oc) {
          const std::size_t woff = (static_cast<std::size_t>(ic) * g.out_c + oc) * g.k * g.k;
          for (int ky = 0; ky < g.k; ++ky) {
            const int oy = y * g.stride - g.pad + ky;
            if (oy < 0 || oy >= g.out_h) continue;
            for (int kx = 0; kx < g.k; ++kx) {
              const int ox = x * g.stride - g.pad + kx;
              if (ox < 0 || ox >= g.out_w) continue;
              const double go = gout[(static_cast<std::size_t>(oc) * g.out_h + oy) * g.out_w + ox];
              gw[woff + ky * g.k + kx] += go * v;
              acc += go * layer.weights[woff + ky * g.k + kx];
            }
          }
        }
        gin[ii] = acc;
      }
    }
  }
}

}  // namespace

std::string to_string(LayerKind kind) {
  switch (kind) {
    case LayerKind::dense: return "dense";
    case LayerKind::conv: return "conv";
    case LayerKind::conv_transpose: return "conv-transpose";
    case LayerKind::relu: return "relu";
    case LayerKind::sigmoid: return "sigmoid";
    case LayerKind::tanh: return "tanh";
    case LayerKind::softmax: return "softmax";
    case LayerKind::flatten: return "flatten";
    case LayerKind::maxpool2x2: return "maxpool2x2";
  }
  return "unknown(" + std::to_string(static_cast<int>(kind)) + ")";
}

bool has_parameters(LayerKind kind) {
  return kind == LayerKind::dense || kind == LayerKind::conv || kind == LayerKind::conv_transpose;
}

std::string to_string(const Shape& s) {
  return "[" + std::to_string(s.channels) + "x" + std::to_string(s.height) + "x" + std::to_string(s.width) + "]";
}

Layer Layer::dense(int in, int out) {
  Layer l;
  l.kind = LayerKind::dense;
  l.in = in;
  l.out = out;
  l.weights.assign(l.weight_count(), 0.0);
  l.bias.assign(l.bias_count(), 0.0);
  return l;
}

Layer Layer::conv(int in_channels, int out_channels, int kernel, int stride, int pad) {
  Layer l;
  l.kind = LayerKind::conv;
  l.in = in_channels;
  l.out = out_channels;
  l.kernel = kernel;
  l.stride = stride;
  l.pad = pad;
  l.weights.assign(l.weight_count(), 0.0);
  l.bias.assign(l.bias_count(), 0.0);
  return l;
}

Layer Layer::conv_transpose(int in_channels, int out_channels, int kernel, int stride, int pad) {
  Layer l = conv(in_channels, out_channels, kernel, stride, pad);
  l.kind = LayerKind::conv_transpose;
  return l;
}

Layer Layer::activation(LayerKind kind) {
  if (has_parameters(kind)) throw std::invalid_argument("Layer::activation: " + to_string(kind) + " has parameters");
  Layer l;
  l.kind = kind;
  return l;
}

std::size_t Layer::weight_count() const {
  switch (kind) {
    case LayerKind::dense:
      return static_cast<std::size_t>(in) * static_cast<std::size_t>(out);
    case LayerKind::conv:
    case LayerKind::conv_transpose:
      return static_cast<std::size_t>(in) * static_cast<std::size_t>(out) * static_cast<std::size_t>(kernel) *
             static_cast<std::size_t>(kernel);
    default:
      return 0;
  }
}

std::size_t Layer::bias_count() const { return has_parameters(kind) ? static_cast<std::size_t>(out) : 0; }

void Gradients::zero() {
  for (auto& w : weights) std::fill(w.begin(), w.end(), 0.0);
  for (auto& b : bias) std::fill(b.begin(), b.end(), 0.0);
}

void Gradients::add(const Gradients& other) {
  for (std::size_t i = 0; i < weights.size(); ++i) {
    for (std::size_t j = 0; j < weights[i].size(); ++j) weights[i][j] += other.weights[i][j];
    for (std::size_t j = 0; j < bias[i].size(); ++j) bias[i][j] += other.bias[i][j];
  }
}

void Gradients::scale(double factor) {
  for (auto& w : weights) for (double& v : w) v *= factor;
  for (auto& b : bias) for (double& v : b) v *= factor;
}

Network::Network(Shape input, std::vector<Layer> layers) : input_(input), layers_(std::move(layers)) {
  if (input_.size() == 0) throw std::invalid_argument("Network: empty input shape");
  Shape cur = input_;
  shapes_.reserve(layers_.size() + 1);
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const Layer& l = layers_[i];
    if (l.weights.size() != l.weight_count() || l.bias.size() != l.bias_count()) {
      throw layer_error(i, l, "parameter count does not match declared shape");
    }
    switch (l.kind) {
      case LayerKind::dense:
        if (l.in <= 0 || l.out <= 0) throw layer_error(i, l, "feature counts must be positive");
        if (cur.size() != static_cast<std::size_t>(l.in)) {
          throw layer_error(i, l, "expects " + std::to_string(l.in) + " inputs, got " + to_string(cur));
        }
        shapes_.push_back(cur);
        cur = Shape{l.out, 1, 1};
        break;
      case LayerKind::conv:
      case LayerKind::conv_transpose: {
        if (l.in <= 0 || l.out <= 0 || l.kernel <= 0 || l.stride <= 0 || l.pad < 0) {
          throw layer_error(i, l, "invalid convolution geometry");
        }
        const Shape in = conv_input(cur, l, i);
        int oh, ow;
        if (l.kind == LayerKind::conv) {
          oh = (in.height + 2 * l.pad - l.kernel) / l.stride + 1;
          ow = (in.width + 2 * l.pad - l.kernel) / l.stride + 1;
          if (in.height + 2 * l.pad < l.kernel || in.width + 2 * l.pad < l.kernel) oh = ow = 0;
        } else {
          oh = (in.height - 1) * l.stride - 2 * l.pad + l.kernel;
          ow = (in.width - 1) * l.stride - 2 * l.pad + l.kernel;
        }
        if (oh <= 0 || ow <= 0) throw layer_error(i, l, "output would be empty for input " + to_string(in));
        shapes_.push_back(in);
        cur = Shape{l.out, oh, ow};
        break;
      }
      case LayerKind::relu:
      case LayerKind::sigmoid:
      case LayerKind::tanh:
      case LayerKind::softmax:
        shapes_.push_back(cur);
        break;
      case LayerKind::flatten:
        shapes_.push_back(cur);
        cur = Shape{static_cast<int>(cur.size()), 1, 1};
        break;
      case LayerKind::maxpool2x2:
        if (cur.height < 2 || cur.width < 2) throw layer_error(i, l, "input " + to_string(cur) + " too small to pool");
        shapes_.push_back(cur);
        cur = Shape{cur.channels, cur.height / 2, cur.width / 2};
        break;
      default:
        throw layer_error(i, l, "unsupported layer kind");
    }
  }
  shapes_.push_back(cur);
}

std::size_t Network::parameter_count() const {
  std::size_t n = 0;
  for (const auto& l : layers_) n += l.weights.size() + l.bias.size();
  return n;
}

Gradients Network::make_gradients() const {
  Gradients g;
  g.weights.reserve(layers_.size());
  g.bias.reserve(layers_.size());
  for (const auto& l : layers_) {
    g.weights.emplace_back(l.weights.size(), 0.0);
    g.bias.emplace_back(l.bias.size(), 0.0);
  }
  return g;
}

void Network::round_to_float() {
  for (auto& l : layers_) {
    for (double& v : l.weights) v = static_cast<double>(static_cast<float>(v));
    for (double& v : l.bias) v = static_cast<double>(static_cast<float>(v));
  }
}

std::vector<double> Network::forward(std::span<const double> input) const {
  return std::move(forward_trace(input).activations.back());
}

ForwardTrace Network::forward_trace(std::span<const double> input) const {
  if (input.size() != input_.size()) {
    throw std::invalid_argument("Network::forward: expected " + std::to_string(input_.size()) + " inputs, got " +
                                std::to_string(input.size()));
  }
  const auto& kern = simd::active();
  ForwardTrace trace;
  trace.activations.reserve(layers_.size() + 1);
  trace.activations.emplace_back(input.begin(), input.end());
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const Layer& l = layers_[i];
    const std::vector<double>& in = trace.activations.back();
    std::vector<double> out(shapes_[i + 1].size());
    switch (l.kind) {
      case LayerKind::dense:
        for (int o = 0; o < l.out; ++o) {
          out[o] = kern.dot(l.weights.data() + static_cast<std::size_t>(o) * l.in, in.data(), in.size()) + l.bias[o];
        }
        break;
      case LayerKind::conv: {
        const ConvGeometry g = geometry(shapes_[i], shapes_[i + 1], l);
        if (l.stride == 1) conv_forward_unit_stride(g, l, in, out);
        else conv_forward_strided(g, l, in, out);
        break;
      }
      case LayerKind::conv_transpose:
        conv_transpose_forward(geometry(shapes_[i], shapes_[i + 1], l), l, in, out);
        break;
      case LayerKind::relu:
        kern.relu(in.data(), out.data(), in.size());
        break;
      case LayerKind::sigmoid:
        std::transform(in.begin(), in.end(), out.begin(), sigmoid);
        break;
      case LayerKind::tanh:
        std::transform(in.begin(), in.end(), out.begin(), [](double v) { return std::tanh(v); });
        break;
      case LayerKind::softmax: {
        const double hi = *std::max_element(in.begin(), in.end());
        double sum = 0.0;
        for (std::size_t j = 0; j < in.size(); ++j) sum += (out[j] = std::exp(in[j] - hi));
        for (double& v : out) v /= sum;
        break;
      }
      case LayerKind::flatten:
        out = in;
        break;
      case LayerKind::maxpool2x2: {
        const Shape& s = shapes_[i];
        const int oh = s.height / 2, ow = s.width / 2;
        for (int c = 0; c < s.channels; ++c) {
          const double* src = in.data() + static_cast<std::size_t>(c) * s.height * s.width;
          double* dst = out.data() + static_cast<std::size_t>(c) * oh * ow;
          for (int y = 0; y < oh; ++y) {
            const double* r0 = src + static_cast<std::size_t>(2 * y) * s.width;
            const double* r1 = r0 + s.width;
            for (int x = 0; x < ow; ++x) {
              dst[y * ow + x] = std::max(std::max(r0[2 * x], r0[2 * x + 1]), std::max(r1[2 * x], r1[2 * x + 1]));
            }
          }
        }
        break;
      }
    }
    trace.activations.push_back(std::move(out));
  }
  return trace;
}

std::vector<double> Network::backward(const ForwardTrace& trace, std::span<const double> output_grad,
                                      Gradients& grads, std::size_t last) const {
  if (last > layers_.size()) throw std::invalid_argument("Network::backward: layer index out of range");
  if (output_grad.size() != shapes_[last].size()) throw std::invalid_argument("Network::backward: gradient size mismatch");
  const auto& kern = simd::active();
  std::vector<double> grad(output_grad.begin(), output_grad.end());
  for (std::size_t idx = last; idx-- > 0;) {
    const Layer& l = layers_[idx];
    const std::vector<double>& in = trace.activations[idx];
    const std::vector<double>& out = trace.activations[idx + 1];
    std::vector<double> gin(in.size(), 0.0);
    switch (l.kind) {
      case LayerKind::dense: {
        auto& gw = grads.weights[idx];
        auto& gb = grads.bias[idx];
        for (int o = 0; o < l.out; ++o) {
          const double g = grad[o];
          if (g == 0.0) continue;
          gb[o] += g;
          kern.axpy(g, in.data(), gw.data() + static_cast<std::size_t>(o) * l.in, in.size());
          kern.axpy(g, l.weights.data() + static_cast<std::size_t>(o) * l.in, gin.data(), in.size());
        }
        break;
      }
      case LayerKind::conv: {
        const ConvGeometry g = geometry(shapes_[idx], shapes_[idx + 1], l);
        if (l.stride == 1) conv_backward_unit_stride(g, l, in, grad, grads.weights[idx], grads.bias[idx], gin);
        else conv_backward_strided(g, l, in, grad, grads.weights[idx], grads.bias[idx], gin);
        break;
      }
      case LayerKind::conv_transpose:
        conv_transpose_backward(geometry(shapes_[idx], shapes_[idx + 1], l), l, in, grad, grads.weights[idx],
                                grads.bias[idx], gin);
        break;
      case LayerKind::relu:
        kern.relu_backward(in.data(), grad.data(), gin.data(), in.size());
        break;
      case LayerKind::sigmoid:
        for (std::size_t j = 0; j < in.size(); ++j) gin[j] = grad[j] * out[j] * (1.0 - out[j]);
        break;
      case LayerKind::tanh:
        for (std::size_t j = 0; j < in.size(); ++j) gin[j] = grad[j] * (1.0 - out[j] * out[j]);
        break;
      case LayerKind::softmax: {
        const double inner = kern.dot(grad.data(), out.data(), out.size());
        for (std::size_t j = 0; j < in.size(); ++j) gin[j] = out[j] * (grad[j] - inner);
        break;
      }
      case LayerKind::flatten:
        gin = grad;
        break;
      case LayerKind::maxpool2x2: {
        const Shape& s = shapes_[idx];
        const int oh = s.height / 2, ow = s.width / 2;
        for (int c = 0; c < s.channels; ++c) {
          const std::size_t base = static_cast<std::size_t>(c) * s.height * s.width;
          for (int y = 0; y < oh; ++y) {
            for (int x = 0; x < ow; ++x) {
              std::size_t best = base + static_cast<std::size_t>(2 * y) * s.width + 2 * x;
              for (int dy = 0; dy < 2; ++dy) {
                for (int dx = 0; dx < 2; ++dx) {
                  const std::size_t j = base + static_cast<std::size_t>(2 * y + dy) * s.width + 2 * x + dx;
                  if (in[j] > in[best]) best = j;
                }
              }
              gin[best] += grad[(static_cast<std::size_t>(c) * oh + y) * ow + x];
            }
          }
        }
        break;
      }
    }
    grad = std::move(gin);
  }
  return grad;
}

}  // namespace levelset::nn
