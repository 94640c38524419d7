#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "levelset/nn/dataset.hpp"
#include "levelset/nn/metrics.hpp"
#include "levelset/nn/train.hpp"
#include "levelset/worlds/house_rocket.hpp"

using namespace levelset;
using namespace levelset::nn;

namespace {

Classifier xor_classifier(std::uint64_t seed) {
  Network net({1, 1, 2}, {Layer::dense(2, 8), Layer::activation(LayerKind::tanh), Layer::dense(8, 2),
                          Layer::activation(LayerKind::softmax)});
  Rng rng(seed);
  kaiming_uniform_init(net, rng);
  return Classifier(net);
}

LabeledDataset xor_data() {
  LabeledDataset d(2, 1, 2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      Image img(2, 1);
      img.pixels = {static_cast<double>(a), static_cast<double>(b)};
      d.add(img, a ^ b);
    }
  return d;
}

Classifier small_cnn(std::uint64_t seed) {
  Network net({1, 16, 16}, {Layer::conv(1, 4, 3, 1, 1), Layer::activation(LayerKind::relu),
                            Layer::activation(LayerKind::maxpool2x2), Layer::activation(LayerKind::flatten),
                            Layer::dense(256, 2), Layer::activation(LayerKind::softmax)});
  Rng rng(seed);
  kaiming_uniform_init(net, rng);
  return Classifier(net);
}

LabeledDataset stripes(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  LabeledDataset d(16, 16, 2);
  for (std::size_t i = 0; i < n; ++i) {
    const int label = static_cast<int>(rng.below(2));
    Image img(16, 16);
    for (int y = 0; y < 16; ++y)
      for (int x = 0; x < 16; ++x) img.at(x, y) = std::clamp(0.5 * (((label ? x : y) % 4) < 2) + 0.2 * rng.uniform(), 0.0, 1.0);
    d.add(img, label);
  }
  return d;
}

}  // namespace

TEST_CASE("XOR is learned to 100% training accuracy") {
  Classifier clf = xor_classifier(5);
  TrainConfig cfg;
  cfg.epochs = 500;
  cfg.batch_size = 4;
  cfg.learning_rate = 0.05;
  cfg.seed = 1;
  const auto data = xor_data();
  const TrainResult r = train(clf, data, cfg);
  CHECK(r.history.size() == 500);
  CHECK(r.history.back().loss < r.history.front().loss);
  CHECK(evaluate(clf, data).accuracy == 1.0);
}

TEST_CASE("training is deterministic and independent of the thread count") {
  const auto data = stripes(100, 3);
  TrainConfig cfg;
  cfg.epochs = 2;
  cfg.batch_size = 20;
  cfg.seed = 9;
  Classifier a = small_cnn(1), b = small_cnn(1), c = small_cnn(1);
  const auto ha = train(a, data, cfg);
  const auto hb = train(b, data, cfg);
  cfg.threads = 8;
  const auto hc = train(c, data, cfg);
  REQUIRE(ha.history.size() == hc.history.size());
  for (std::size_t i = 0; i < ha.history.size(); ++i) {
    CHECK(ha.history[i].loss == hb.history[i].loss);
    CHECK(ha.history[i].loss == hc.history[i].loss);
  }
  for (std::size_t l = 0; l < a.network().layers().size(); ++l) {
    CHECK(a.network().layers()[l].weights == c.network().layers()[l].weights);
  }
  CHECK(ha.history.back().loss < ha.history.front().loss);
}

TEST_CASE("cross-entropy gradient matches finite differences on a 3-layer net") {
  Network net({1, 1, 4}, {Layer::dense(4, 6), Layer::activation(LayerKind::sigmoid), Layer::dense(6, 5),
                          Layer::activation(LayerKind::relu), Layer::dense(5, 3), Layer::activation(LayerKind::softmax)});
  Rng rng(17);
  for (auto& l : net.mutable_layers()) {
    for (double& w : l.weights) w = 0.7 * rng.normal();
    for (double& b : l.bias) b = 0.2 * rng.normal() + 0.1;
  }
  const std::vector<double> x{0.3, -0.8, 1.1, 0.05};
  Gradients g = net.make_gradients();
  cross_entropy_backward(net, x, 2, g);
  auto loss = [&] { return -std::log(net.forward(x)[2]); };
  const double eps = 1e-5;
  for (std::size_t li = 0; li < net.layers().size(); ++li) {
    auto& params = net.mutable_layers()[li].weights;
    for (std::size_t p = 0; p < params.size(); ++p) {
      const double saved = params[p];
      params[p] = saved + eps;
      const double up = loss();
      params[p] = saved - eps;
      const double down = loss();
      params[p] = saved;
      const double numeric = (up - down) / (2 * eps);
      REQUIRE(std::abs(numeric - g.weights[li][p]) <= 1e-4 * std::max(std::abs(numeric), 1e-3));
    }
  }
}

TEST_CASE("training errors") {
  Classifier clf = xor_classifier(1);
  TrainConfig cfg;
  CHECK_THROWS_AS(train(clf, LabeledDataset(2, 1, 2), cfg), std::invalid_argument);
  cfg.optimizer = "rmsprop";
  CHECK_THROWS_AS(train(clf, xor_data(), cfg), std::invalid_argument);

  SUBCASE("divergence is reported") {
    Classifier broken = xor_classifier(1);
    broken.mutable_network().mutable_layers()[0].weights[0] = std::numeric_limits<double>::quiet_NaN();
    TrainConfig c;
    c.batch_size = 4;
    CHECK_THROWS_WITH_AS(train(broken, xor_data(), c), doctest::Contains("NaN"), std::runtime_error);
  }
}

TEST_CASE("metrics agree with an independent confusion count") {
  Rng rng(31);
  const int L = 3;
  std::vector<int> truth(1000), pred(1000);
  for (int i = 0; i < 1000; ++i) {
    truth[i] = static_cast<int>(rng.below(L));
    pred[i] = rng.uniform() < 0.7 ? truth[i] : static_cast<int>(rng.below(L));
  }
  const EvalMetrics m = tally(truth, pred, L);
  int correct = 0;
  for (int i = 0; i < 1000; ++i) correct += truth[i] == pred[i];
  CHECK(m.correct == static_cast<std::size_t>(correct));
  CHECK(m.accuracy == correct / 1000.0);
  for (int c = 0; c < L; ++c) {
    int tp = 0, predicted = 0, actual = 0;
    for (int i = 0; i < 1000; ++i) {
      tp += truth[i] == c && pred[i] == c;
      predicted += pred[i] == c;
      actual += truth[i] == c;
    }
    CHECK(m.per_class[c].precision == doctest::Approx(static_cast<double>(tp) / predicted));
    CHECK(m.per_class[c].recall == doctest::Approx(static_cast<double>(tp) / actual));
    CHECK(m.per_class[c].support == static_cast<std::size_t>(actual));
  }

  SUBCASE("perfect and constant predictors") {
    std::vector<int> balanced{0, 1, 0, 1, 0, 1};
    CHECK(tally(balanced, balanced, 2).accuracy == 1.0);
    const auto constant = tally(balanced, std::vector<int>(6, 0), 2);
    CHECK(constant.accuracy == 0.5);
    CHECK(constant.per_class[1].precision == 0.0);
  }
  SUBCASE("permutation invariance") {
    auto t2 = truth, p2 = pred;
    std::vector<std::size_t> idx(1000);
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    for (std::size_t i = idx.size(); i > 1; --i) std::swap(idx[i - 1], idx[rng.below(i)]);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      t2[i] = truth[idx[i]];
      p2[i] = pred[idx[i]];
    }
    CHECK(tally(t2, p2, L).confusion == m.confusion);
  }
}

TEST_CASE("dataset generation") {
  Rng a(4), b(4);
  const auto da = generate_dataset(200, a);
  const auto db = generate_dataset(200, b);
  CHECK(da.size() == 200);
  CHECK(da.labels() == db.labels());
  CHECK(da.image(17) == db.image(17));
  CHECK(da.width() == 64);

  Rng big(11);
  const auto labels = generate_dataset(16000, big).labels();
  CHECK(labels.size() == 16000);
  const double houses = std::count(labels.begin(), labels.end(), kHouseLabel) / 16000.0;
  CHECK(std::abs(houses - 0.5) <= 0.02);

  SUBCASE("16-bit storage") {
    CHECK(quantize16(0.0) == 0);
    CHECK(quantize16(1.0) == 65535);
    CHECK(std::abs(dequantize16(quantize16(0.3)) - 0.3) <= 0.5 / 65535.0);
    const auto part = da.slice(10, 20);
    CHECK(part.size() == 10);
    CHECK(part.image(0) == da.image(10));
  }
}
