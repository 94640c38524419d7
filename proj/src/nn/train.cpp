#include "levelset/nn/train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "levelset/parallel.hpp"

namespace levelset::nn {
namespace {

constexpr std::size_t kChunkSize = 8;

class Optimizer {
 public:
  Optimizer(const Network& net, const TrainConfig& cfg) : adam_(cfg.optimizer == "adam"), lr_(cfg.learning_rate) {
    if (adam_) {
      m_ = net.make_gradients();
      v_ = net.make_gradients();
    }
  }

  void step(Network& net, const Gradients& g) {
    ++t_;
    const double bc1 = 1.0 - std::pow(kBeta1, static_cast<double>(t_));
    const double bc2 = 1.0 - std::pow(kBeta2, static_cast<double>(t_));
    auto& layers = net.mutable_layers();
    for (std::size_t i = 0; i < layers.size(); ++i) {
      update(layers[i].weights, g.weights[i], i, true, bc1, bc2);
      update(layers[i].bias, g.bias[i], i, false, bc1, bc2);
    }
  }

 private:
  static constexpr double kBeta1 = 0.9;
  static constexpr double kBeta2 = 0.999;
  static constexpr double kEps = 1e-8;

  void update(std::vector<double>& params, const std::vector<double>& grad, std::size_t layer, bool weights, double bc1,
              double bc2) {
    if (!adam_) {
      for (std::size_t j = 0; j < params.size(); ++j) params[j] -= lr_ * grad[j];
      return;
    }
    auto& m = weights ? m_.weights[layer] : m_.bias[layer];
    auto& v = weights ? v_.weights[layer] : v_.bias[layer];
    for (std::size_t j = 0; j < params.size(); ++j) {
      m[j] = kBeta1 * m[j] + (1.0 - kBeta1) * grad[j];
      v[j] = kBeta2 * v[j] + (1.0 - kBeta2) * grad[j] * grad[j];
      params[j] -= lr_ * (m[j] / bc1) / (std::sqrt(v[j] / bc2) + kEps);
    }
  }

  bool adam_;
  double lr_;
  long t_ = 0;
  Gradients m_, v_;
};

}  // namespace

void TrainConfig::validate() const {
  if (epochs <= 0) throw std::invalid_argument("TrainConfig: epochs must be positive");
  if (batch_size <= 0) throw std::invalid_argument("TrainConfig: batch size must be positive");
  if (!(learning_rate > 0.0)) throw std::invalid_argument("TrainConfig: learning rate must be positive");
  if (threads <= 0) throw std::invalid_argument("TrainConfig: threads must be positive");
  if (optimizer != "adam" && optimizer != "sgd") throw std::invalid_argument("TrainConfig: unknown optimizer '" + optimizer + "'");
}

double cross_entropy_backward(const Network& net, std::span<const double> input, int label, Gradients& grads) {
  const std::size_t n = net.layers().size();
  if (n == 0 || net.layers().back().kind != LayerKind::softmax) {
    throw std::invalid_argument("cross_entropy_backward: network must end in softmax");
  }
  const ForwardTrace trace = net.forward_trace(input);
  const std::vector<double>& probs = trace.output();
  if (label < 0 || static_cast<std::size_t>(label) >= probs.size()) throw std::invalid_argument("cross_entropy_backward: bad label");
  // Softmax and cross-entropy combine to (p - onehot) at the softmax input.
  std::vector<double> g(probs);
  g[label] -= 1.0;
  net.backward(trace, g, grads, n - 1);
  return -std::log(std::max(probs[label], 1e-300));
}

TrainResult train(Classifier& clf, const LabeledDataset& data, const TrainConfig& cfg,
                  const std::function<void(const LossRecord&)>& on_batch) {
  cfg.validate();
  if (data.empty()) throw std::invalid_argument("train: empty dataset");
  Network& net = clf.mutable_network();
  if (data.width() != clf.image_width() || data.height() != clf.image_height()) {
    throw std::invalid_argument("train: dataset image size does not match classifier input");
  }

  Rng rng(cfg.seed);
  Optimizer opt(net, cfg);
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);

  const std::size_t max_chunks = (static_cast<std::size_t>(cfg.batch_size) + kChunkSize - 1) / kChunkSize;
  std::vector<Gradients> chunk_grads(max_chunks, net.make_gradients());
  std::vector<double> chunk_loss(max_chunks);
  Gradients total = net.make_gradients();

  TrainResult result;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    int batch = 0;
    for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(cfg.batch_size), ++batch) {
      const std::size_t end = std::min(order.size(), start + static_cast<std::size_t>(cfg.batch_size));
      const std::size_t count = end - start;
      const std::size_t chunks = (count + kChunkSize - 1) / kChunkSize;
      parallel_for(chunks, cfg.threads, [&](std::size_t c) {
        Gradients& g = chunk_grads[c];
        g.zero();
        double loss = 0.0;
        const std::size_t lo = start + c * kChunkSize;
        const std::size_t hi = std::min(end, lo + kChunkSize);
        for (std::size_t k = lo; k < hi; ++k) {
          const Image img = data.image(order[k]);
          loss += cross_entropy_backward(net, img.pixels, data.label(order[k]), g);
        }
        chunk_loss[c] = loss;
      });
      total.zero();
      double loss = 0.0;
      for (std::size_t c = 0; c < chunks; ++c) {
        total.add(chunk_grads[c]);
        loss += chunk_loss[c];
      }
      total.scale(1.0 / static_cast<double>(count));
      loss /= static_cast<double>(count);
      if (std::isnan(loss)) {
        throw std::runtime_error("train: loss diverged (NaN) at epoch " + std::to_string(epoch) + " batch " +
                                 std::to_string(batch));
      }
      opt.step(net, total);
      const LossRecord rec{epoch, batch, loss};
      result.history.push_back(rec);
      if (on_batch) on_batch(rec);
    }
  }
  net.round_to_float();
  return result;
}

}  // namespace levelset::nn
