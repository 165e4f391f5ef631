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

// Minimal feed-forward inference runtime.
//
// A Model is an ordered list of layers drawn from a fixed vocabulary
// (dense, conv2d, relu, maxpool2, flatten, softmax). Tensors flow between
// layers in HWC order; a dense layer consumes the flattened HWC tensor of
// whatever precedes it. Every non-input layer's output is recorded in the
// ActivationProfile so coverage can be measured on any neuron.
//
// Parameter layouts (also the order inside the weights blob):
//   dense:  weights[out][in], then bias[out]
//   conv2d: weights[out_ch][ky][kx][in_ch], then bias[out_ch]
// Convolutions are stride 1 with no padding.

#ifndef SWARMTEST_MODEL_H_
#define SWARMTEST_MODEL_H_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "swarmtest/image.h"

namespace swarmtest {

class ModelError : public Error {
 public:
  // layer < 0 means the error is not tied to a particular layer.
  ModelError(const std::string& what, int layer = -1);
  int layer() const { return layer_; }

 private:
  int layer_;
};

enum class LayerKind { kDense, kConv2D, kReLU, kMaxPool2, kFlatten, kSoftmax };
enum class Activation { kNone, kReLU };
enum class Precision { kSingle, kTruncatedHalf };

std::string to_string(LayerKind kind);
std::string to_string(Precision precision);

struct TensorShape {
  int height = 1;
  int width = 1;
  int channels = 1;

  std::size_t size() const {
    return static_cast<std::size_t>(height) * width * channels;
  }
  friend bool operator==(const TensorShape&, const TensorShape&) = default;
};

struct Layer {
  LayerKind kind = LayerKind::kDense;
  Activation activation = Activation::kNone;

  // dense: inputs/outputs; conv2d: in/out channels and square kernel size.
  int inputs = 0;
  int outputs = 0;
  int kernel = 0;

  std::vector<float> weights;
  std::vector<float> bias;

  // Filled in by validation.
  TensorShape input_shape;
  TensorShape output_shape;

  std::size_t weight_count() const;
  std::size_t bias_count() const;
};

struct ClassLabel {
  int index = 0;
  friend bool operator==(const ClassLabel&, const ClassLabel&) = default;
};

// Post-activation outputs of one forward pass, one entry per non-input layer.
// A final softmax layer is recorded but not tracked: its neurons are excluded
// from coverage.
struct ActivationProfile {
  struct LayerValues {
    int layer = 0;
    bool tracked = true;
    std::vector<float> values;
  };
  std::vector<LayerValues> per_layer;

  // Number of tracked neurons (the coverage universe).
  std::size_t neuron_count() const;
};

struct ForwardResult {
  std::vector<float> logits;
  ActivationProfile profile;
};

class Model {
 public:
  // Validates shapes, parameter counts and finiteness. Throws ModelError.
  Model(TensorShape input_shape, std::vector<Layer> layers, int num_classes,
        Precision precision = Precision::kSingle);

  const TensorShape& input_shape() const { return input_shape_; }
  const std::vector<Layer>& layers() const { return layers_; }
  int num_classes() const { return num_classes_; }
  Precision precision() const { return precision_; }

  std::size_t parameter_count() const;
  // Tracked neuron count; identical for every input.
  std::size_t neuron_count() const;

  // Deterministic single-precision inference. Throws ShapeError if the image
  // does not match input_shape().
  ForwardResult forward(const Image& input) const;
  std::vector<float> logits(const Image& input) const;

  // Argmax of the logits, ties broken by the lowest index.
  ClassLabel predict(const Image& input) const;

 private:
  TensorShape input_shape_;
  std::vector<Layer> layers_;
  int num_classes_;
  Precision precision_;
};

ClassLabel argmax_label(std::span<const float> logits);

// Round-trips every stored parameter (weights and biases) through binary16.
// Idempotent: quantizing a truncated model returns an identical model.
// Throws ModelError naming the layer if any parameter overflows binary16.
Model quantize_model(const Model& model);

// Manifest (JSON) + raw little-endian float32 blob.
Model load_model(const std::filesystem::path& manifest_path,
                 const std::filesystem::path& weights_path);
// Parses a manifest from text; the blob is supplied directly.
Model model_from_manifest(const std::string& manifest_text,
                          std::span<const float> blob);
void save_model(const Model& model, const std::filesystem::path& manifest_path,
                const std::filesystem::path& weights_path);
std::string manifest_json(const Model& model);
std::vector<float> flatten_parameters(const Model& model);

std::vector<float> read_float_blob(const std::filesystem::path& path);
void write_float_blob(const std::filesystem::path& path,
                      std::span<const float> values);

}  // namespace swarmtest

#endif  // SWARMTEST_MODEL_H_
