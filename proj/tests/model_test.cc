/* Copyright 2026 The Swarmtest Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <string>

#include "gtest/gtest.h"
#include "json.hpp"
#include "oracles.h"
#include "swarmtest/half.h"
#include "swarmtest/model.h"
#include "test_util.h"

namespace swarmtest {
namespace {

using testing::dense;
using testing::row_image;
using testing::simple;

const char* kDenseSoftmaxManifest = R"({
  "format": "swarmtest-model-v1",
  "input": {"height": 1, "width": 4, "channels": 1},
  "num_classes": 2,
  "layers": [
    {"kind": "dense", "inputs": 4, "outputs": 2, "activation": "none"},
    {"kind": "softmax"}
  ]
})";

TEST(ModelLoad, DenseSoftmaxRecordsTwoLayers) {
  std::vector<float> blob(10, 0.1f);
  const Model m = model_from_manifest(kDenseSoftmaxManifest, blob);
  EXPECT_EQ(m.layers().size(), 2u);
  const ForwardResult r = m.forward(row_image({0.1f, 0.2f, 0.3f, 0.4f}));
  EXPECT_EQ(r.profile.per_layer.size(), 2u);
  EXPECT_TRUE(r.profile.per_layer[0].tracked);
  EXPECT_FALSE(r.profile.per_layer[1].tracked);
  // Softmax is recorded but not part of the coverage universe.
  EXPECT_EQ(m.neuron_count(), 2u);
  EXPECT_EQ(m.precision(), Precision::kSingle);
}

TEST(ModelLoad, TruncatedBlobIsAnError) {
  std::vector<float> blob(9, 0.1f);
  try {
    model_from_manifest(kDenseSoftmaxManifest, blob);
    FAIL() << "expected ModelError";
  } catch (const ModelError& e) {
    EXPECT_EQ(e.layer(), 0);
    EXPECT_NE(std::string(e.what()).find("truncated"), std::string::npos);
  }
}

TEST(ModelLoad, ExtraBlobValuesAreAnError) {
  std::vector<float> blob(11, 0.1f);
  EXPECT_THROW(model_from_manifest(kDenseSoftmaxManifest, blob), ModelError);
}

TEST(ModelLoad, NonFiniteWeightNamesLayer) {
  std::vector<float> blob(10, 0.1f);
  blob[3] = std::nanf("");
  try {
    model_from_manifest(kDenseSoftmaxManifest, blob);
    FAIL() << "expected ModelError";
  } catch (const ModelError& e) {
    EXPECT_EQ(e.layer(), 0);
    EXPECT_NE(std::string(e.what()).find("layer 0"), std::string::npos);
  }
}

TEST(ModelLoad, MalformedManifests) {
  std::vector<float> blob(10, 0.1f);
  EXPECT_THROW(model_from_manifest("{not json", blob), ModelError);
  EXPECT_THROW(model_from_manifest(R"({"format": "other", "layers": []})", blob),
               ModelError);
  // Shape mismatch: dense expects 3 inputs but the image has 4 values.
  const char* mismatch = R"({
    "format": "swarmtest-model-v1",
    "input": {"height": 1, "width": 4, "channels": 1},
    "num_classes": 2,
    "layers": [{"kind": "dense", "inputs": 3, "outputs": 2}]
  })";
  std::vector<float> blob8(8, 0.1f);
  try {
    model_from_manifest(mismatch, blob8);
    FAIL() << "expected ModelError";
  } catch (const ModelError& e) {
    EXPECT_EQ(e.layer(), 0);
  }
  const char* softmax_first = R"({
    "format": "swarmtest-model-v1",
    "input": {"height": 1, "width": 2, "channels": 1},
    "num_classes": 2,
    "layers": [{"kind": "softmax"}, {"kind": "relu"}]
  })";
  EXPECT_THROW(model_from_manifest(softmax_first, {}), ModelError);
  const char* unknown = R"({
    "format": "swarmtest-model-v1",
    "input": {"height": 1, "width": 2, "channels": 1},
    "num_classes": 2,
    "layers": [{"kind": "lstm"}]
  })";
  EXPECT_THROW(model_from_manifest(unknown, {}), ModelError);
}

TEST(ModelLoad, WrongClassCountIsAnError) {
  EXPECT_THROW(Model(TensorShape{1, 2, 1},
                     {dense(2, 3, std::vector<float>(6, 0.f),
                            std::vector<float>(3, 0.f))},
                     2),
               ModelError);
}

TEST(Forward, IdentityDenseWithRelu) {
  const Model m(TensorShape{1, 2, 1},
                {dense(2, 2, {1, 0, 0, 1}, {0, 0}, Activation::kReLU)}, 2);
  const ForwardResult r = m.forward(row_image({0.3f, 0.7f}));
  ASSERT_EQ(r.logits.size(), 2u);
  EXPECT_FLOAT_EQ(r.logits[0], 0.3f);
  EXPECT_FLOAT_EQ(r.logits[1], 0.7f);
  ASSERT_EQ(r.profile.per_layer.size(), 1u);
  EXPECT_FLOAT_EQ(r.profile.per_layer[0].values[0], 0.3f);
  EXPECT_FLOAT_EQ(r.profile.per_layer[0].values[1], 0.7f);
}

TEST(Forward, ReluClampsNegativeSum) {
  const Model m(TensorShape{1, 2, 1},
                {dense(2, 1, {1, -1}, {0}, Activation::kReLU)}, 1);
  const auto logits = m.logits(row_image({0.2f, 0.5f}));
  ASSERT_EQ(logits.size(), 1u);
  EXPECT_EQ(logits[0], 0.0f);
}

TEST(Forward, ShapeMismatchThrows) {
  const Model m(TensorShape{1, 2, 1}, {dense(2, 2, {1, 0, 0, 1}, {0, 0})}, 2);
  EXPECT_THROW(m.forward(row_image({0.1f, 0.2f, 0.3f})), ShapeError);
}

TEST(Forward, DeterministicAndStableProfileShape) {
  const Model m = load_model(testing::bundled_data_dir() / "models/mnist_small.json",
                             testing::bundled_data_dir() / "models/mnist_small.bin");
  std::mt19937_64 rng(3);
  const Image a = testing::random_image(rng, 28, 28);
  const Image b = testing::random_image(rng, 28, 28);
  const ForwardResult r1 = m.forward(a);
  const ForwardResult r2 = m.forward(a);
  EXPECT_EQ(r1.logits, r2.logits);
  ASSERT_EQ(r1.profile.per_layer.size(), r2.profile.per_layer.size());
  for (std::size_t i = 0; i < r1.profile.per_layer.size(); ++i) {
    EXPECT_EQ(r1.profile.per_layer[i].values, r2.profile.per_layer[i].values);
  }
  EXPECT_EQ(r1.profile.neuron_count(), m.neuron_count());
  EXPECT_EQ(m.forward(b).profile.neuron_count(), m.neuron_count());
}

TEST(Forward, SoftmaxSumsToOne) {
  const Model m = load_model(testing::bundled_data_dir() / "models/mnist_small.json",
                             testing::bundled_data_dir() / "models/mnist_small.bin");
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    const ForwardResult r = m.forward(testing::random_image(rng, 28, 28));
    const auto& probs = r.profile.per_layer.back().values;
    double sum = 0;
    for (float p : probs) {
      EXPECT_GE(p, 0.0f);
      sum += p;
    }
    EXPECT_NEAR(sum, 1.0, 1e-6);
  }
}

TEST(Forward, ReferenceModelMatchesGolden) {
  const auto dir = testing::test_data_dir();
  const Model m = load_model(dir / "reference_model.json", dir / "reference_model.bin");
  std::ifstream in(dir / "reference_golden.json");
  const auto golden = nlohmann::json::parse(in);
  const auto& gi = golden["image"];
  std::vector<float> pixels;
  for (double v : gi["data"]) pixels.push_back(static_cast<float>(v));
  const Image img(gi["height"], gi["width"], gi["channels"], pixels);

  const ForwardResult r = m.forward(img);
  const auto& logits = golden["logits"];
  ASSERT_EQ(r.logits.size(), logits.size());
  for (std::size_t i = 0; i < logits.size(); ++i) {
    EXPECT_NEAR(r.logits[i], logits[i].get<double>(), 1e-6) << "logit " << i;
  }
  const auto& conv = golden["conv_relu"];
  ASSERT_EQ(r.profile.per_layer[0].values.size(), conv.size());
  for (std::size_t i = 0; i < conv.size(); ++i) {
    EXPECT_NEAR(r.profile.per_layer[0].values[i], conv[i].get<double>(), 1e-6);
  }
  const auto& pool = golden["maxpool"];
  ASSERT_EQ(r.profile.per_layer[1].values.size(), pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    EXPECT_NEAR(r.profile.per_layer[1].values[i], pool[i].get<double>(), 1e-6);
  }
  EXPECT_EQ(m.predict(img).index, golden["label"].get<int>());
}

TEST(Forward, ConvMaxpoolFlattenLayout) {
  // 3x3x3 input, conv 3->1 with a 2x2 kernel that reads only channel 1 at
  // (ky=1, kx=0), then a 2x2 max pool and flatten.
  Layer conv;
  conv.kind = LayerKind::kConv2D;
  conv.inputs = 3;
  conv.outputs = 1;
  conv.kernel = 2;
  conv.weights = std::vector<float>(12, 0.0f);
  conv.weights[(1 * 2 + 0) * 3 + 1] = 1.0f;  // [oc=0][ky=1][kx=0][ic=1]
  conv.bias = {0.5f};
  std::vector<float> data(27);
  for (int i = 0; i < 27; ++i) data[i] = static_cast<float>(i) / 30.0f;
  const Image img(3, 3, 3, data);
  const Model m(TensorShape{3, 3, 3},
                {conv, simple(LayerKind::kMaxPool2), simple(LayerKind::kFlatten)},
                1);
  const ForwardResult r = m.forward(img);
  // conv(y, x) = 0.5 + img(y + 1, x, 1)
  const auto& cv = r.profile.per_layer[0].values;
  ASSERT_EQ(cv.size(), 4u);
  EXPECT_FLOAT_EQ(cv[0], 0.5f + img.at(1, 0, 1));
  EXPECT_FLOAT_EQ(cv[1], 0.5f + img.at(1, 1, 1));
  EXPECT_FLOAT_EQ(cv[2], 0.5f + img.at(2, 0, 1));
  EXPECT_FLOAT_EQ(cv[3], 0.5f + img.at(2, 1, 1));
  ASSERT_EQ(r.logits.size(), 1u);
  EXPECT_FLOAT_EQ(r.logits[0], 0.5f + img.at(2, 1, 1));
}

TEST(Predict, ArgmaxAndTieBreak) {
  const std::vector<float> a{0.1f, 0.9f};
  EXPECT_EQ(argmax_label(a).index, 1);
  const std::vector<float> tie{0.5f, 0.5f};
  EXPECT_EQ(argmax_label(tie).index, 0);
  const std::vector<float> tie3{0.2f, 0.7f, 0.7f};
  EXPECT_EQ(argmax_label(tie3).index, 1);
}

TEST(Quantize, KnownValues) {
  const Model m(TensorShape{1, 2, 1},
                {dense(2, 2, {0.5f, 0.1f, -0.1f, 1.0f / 3.0f}, {0.1f, 2.0f})}, 2);
  const Model q = quantize_model(m);
  EXPECT_EQ(q.precision(), Precision::kTruncatedHalf);
  EXPECT_EQ(q.layers()[0].weights[0], 0.5f);
  EXPECT_EQ(q.layers()[0].weights[1], 0.0999755859375f);
  EXPECT_EQ(q.layers()[0].weights[2], -0.0999755859375f);
  EXPECT_EQ(q.layers()[0].bias[0], 0.0999755859375f);  // biases are rounded too
  EXPECT_EQ(q.layers()[0].bias[1], 2.0f);
  EXPECT_EQ(static_cast<double>(q.layers()[0].weights[3]),
            oracle::round_to_half(1.0f / 3.0f));
  // Architecture unchanged.
  EXPECT_EQ(q.layers().size(), m.layers().size());
  EXPECT_EQ(q.input_shape(), m.input_shape());
  EXPECT_EQ(q.neuron_count(), m.neuron_count());
}

TEST(Quantize, IdempotentOnBundledModel) {
  const Model m = load_model(testing::bundled_data_dir() / "models/mnist_small.json",
                             testing::bundled_data_dir() / "models/mnist_small.bin");
  const Model q = quantize_model(m);
  const auto p1 = flatten_parameters(q);
  for (float v : p1) EXPECT_EQ(round_trip_half(v), v);
  const Model qq = quantize_model(q);
  EXPECT_EQ(qq.precision(), Precision::kTruncatedHalf);
  EXPECT_EQ(flatten_parameters(qq), p1);
  const Model relabeled(q.input_shape(), q.layers(), q.num_classes());
  EXPECT_EQ(flatten_parameters(quantize_model(relabeled)), p1);
}

TEST(Quantize, OverflowNamesLayer) {
  const Model m(TensorShape{1, 2, 1},
                {dense(2, 2, {1, 0, 0, 1}, {0, 0}, Activation::kReLU),
                 dense(2, 1, {70000.0f, 1.0f}, {0})},
                1);
  try {
    quantize_model(m);
    FAIL() << "expected ModelError";
  } catch (const ModelError& e) {
    EXPECT_EQ(e.layer(), 1);
  }
}

TEST(ModelIo, SaveLoadRoundTrip) {
  const auto dir = testing::temp_dir("model_io");
  const Model m = load_model(testing::bundled_data_dir() / "models/mnist_small.json",
                             testing::bundled_data_dir() / "models/mnist_small.bin");
  const Model q = quantize_model(m);
  save_model(q, dir / "q.json", dir / "q.bin");
  const Model back = load_model(dir / "q.json", dir / "q.bin");
  EXPECT_EQ(back.precision(), Precision::kTruncatedHalf);
  EXPECT_EQ(flatten_parameters(back), flatten_parameters(q));
  EXPECT_EQ(std::filesystem::file_size(dir / "q.bin"),
            4 * q.parameter_count());
  std::filesystem::remove_all(dir);
}

TEST(ModelIo, MissingFilesThrow) {
  EXPECT_THROW(load_model("/nonexistent/m.json", "/nonexistent/m.bin"), Error);
}

}  // namespace
}  // namespace swarmtest
