#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace levelset::nn {

/// Layer kinds; the numeric values are the LSWF on-disk tags.
enum class LayerKind : std::uint8_t {
  dense = 0,
  conv = 1,
  conv_transpose = 2,
  relu = 3,
  sigmoid = 4,
  tanh = 5,
  softmax = 6,
  flatten = 7,
  maxpool2x2 = 8,
};

std::string to_string(LayerKind kind);
bool has_parameters(LayerKind kind);

/// Channels x height x width. Flat vectors are {n, 1, 1}.
struct Shape {
  int channels = 0;
  int height = 1;
  int width = 1;

  std::size_t size() const {
    return static_cast<std::size_t>(channels) * static_cast<std::size_t>(height) * static_cast<std::size_t>(width);
  }
  bool is_flat() const { return height == 1 && width == 1; }
  friend bool operator==(const Shape&, const Shape&) = default;
};

std::string to_string(const Shape& s);

struct Layer {
  LayerKind kind = LayerKind::relu;
  // dense: in/out features. conv and conv_transpose: in/out channels.
  int in = 0;
  int out = 0;
  int kernel = 0;
  int stride = 1;
  int pad = 0;
  // dense: [out][in]; conv: [out][in][k][k]; conv_transpose: [in][out][k][k].
  std::vector<double> weights;
  std::vector<double> bias;

  static Layer dense(int in, int out);
  static Layer conv(int in_channels, int out_channels, int kernel, int stride = 1, int pad = 0);
  static Layer conv_transpose(int in_channels, int out_channels, int kernel, int stride = 1, int pad = 0);
  static Layer activation(LayerKind kind);

  std::size_t weight_count() const;
  std::size_t bias_count() const;
};

/// Per-layer parameter gradients, laid out like the layers' own parameters.
struct Gradients {
  std::vector<std::vector<double>> weights;
  std::vector<std::vector<double>> bias;

  void zero();
  void add(const Gradients& other);
  void scale(double factor);
};

/// Activations recorded by a forward pass; entry i is the input of layer i and
/// the last entry is the network output.
struct ForwardTrace {
  std::vector<std::vector<double>> activations;
  const std::vector<double>& output() const { return activations.back(); }
};

/// Feed-forward network over the LSWF layer kinds.
///
/// Shapes propagate from the input shape. A flat vector entering a conv or
/// conv-transpose layer is reinterpreted as a square {in_channels, s, s} map.
class Network {
 public:
  Network() = default;
  /// Validates that consecutive layers compose; throws std::invalid_argument
  /// naming the offending layer index otherwise.
  Network(Shape input, std::vector<Layer> layers);

  const Shape& input_shape() const { return input_; }
  const Shape& output_shape() const { return shapes_.back(); }
  /// Shape of the input to layer i (i == layers().size() gives the output shape).
  const Shape& shape_at(std::size_t i) const { return shapes_[i]; }
  const std::vector<Layer>& layers() const { return layers_; }
  std::vector<Layer>& mutable_layers() { return layers_; }
  std::size_t parameter_count() const;

  std::vector<double> forward(std::span<const double> input) const;
  ForwardTrace forward_trace(std::span<const double> input) const;

  /// Backpropagate `output_grad` (d loss / d output of layer `last - 1`) from
  /// layer `last - 1` down to layer 0. Parameter gradients are accumulated
  /// into `grads`; the gradient with respect to the network input is returned.
  std::vector<double> backward(const ForwardTrace& trace, std::span<const double> output_grad,
                               Gradients& grads, std::size_t last) const;
  std::vector<double> backward(const ForwardTrace& trace, std::span<const double> output_grad,
                               Gradients& grads) const {
    return backward(trace, output_grad, grads, layers_.size());
  }

  Gradients make_gradients() const;

  /// Round every parameter to the nearest float, matching what LSWF stores.
  void round_to_float();

 private:
  Shape input_;
  std::vector<Layer> layers_;
  std::vector<Shape> shapes_;
};

}  // namespace levelset::nn
