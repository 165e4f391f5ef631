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

#include "swarmtest/model.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <limits>

#include "json.hpp"
#include "swarmtest/half.h"

namespace swarmtest {
namespace {

using json = nlohmann::json;

constexpr const char* kManifestFormat = "swarmtest-model-v1";

std::string layer_prefix(int layer) {
  return layer < 0 ? std::string() : "layer " + std::to_string(layer) + ": ";
}

std::string shape_text(const TensorShape& s) {
  return std::to_string(s.height) + "x" + std::to_string(s.width) + "x" +
         std::to_string(s.channels);
}

// Checks one layer against the incoming shape and fills in its shapes.
void resolve_layer(Layer& layer, const TensorShape& in, int index,
                   bool is_last) {
  layer.input_shape = in;
  switch (layer.kind) {
    case LayerKind::kDense:
      if (layer.inputs <= 0 || layer.outputs <= 0) {
        throw ModelError("dense layer needs positive inputs/outputs", index);
      }
      if (static_cast<std::size_t>(layer.inputs) != in.size()) {
        throw ModelError("dense expects " + std::to_string(layer.inputs) +
                             " inputs but receives " + shape_text(in),
                         index);
      }
      layer.output_shape = {1, 1, layer.outputs};
      break;
    case LayerKind::kConv2D:
      if (layer.inputs <= 0 || layer.outputs <= 0 || layer.kernel <= 0) {
        throw ModelError("conv2d needs positive channels and kernel", index);
      }
      if (in.channels != layer.inputs) {
        throw ModelError("conv2d expects " + std::to_string(layer.inputs) +
                             " input channels but receives " + shape_text(in),
                         index);
      }
      if (in.height < layer.kernel || in.width < layer.kernel) {
        throw ModelError("conv2d kernel larger than input " + shape_text(in),
                         index);
      }
      layer.output_shape = {in.height - layer.kernel + 1,
                            in.width - layer.kernel + 1, layer.outputs};
      break;
    case LayerKind::kReLU:
      layer.output_shape = in;
      break;
    case LayerKind::kMaxPool2:
      if (in.height < 2 || in.width < 2) {
        throw ModelError("maxpool2 needs at least 2x2 input, got " +
                             shape_text(in),
                         index);
      }
      layer.output_shape = {in.height / 2, in.width / 2, in.channels};
      break;
    case LayerKind::kFlatten:
      layer.output_shape = {1, 1, static_cast<int>(in.size())};
      break;
    case LayerKind::kSoftmax:
      if (!is_last) {
        throw ModelError("softmax is only allowed as the final layer", index);
      }
      layer.output_shape = in;
      break;
  }
  if (layer.weights.size() != layer.weight_count() ||
      layer.bias.size() != layer.bias_count()) {
    throw ModelError("parameter count mismatch: expected " +
                         std::to_string(layer.weight_count()) + "+" +
                         std::to_string(layer.bias_count()) + ", got " +
                         std::to_string(layer.weights.size()) + "+" +
                         std::to_string(layer.bias.size()),
                     index);
  }
  auto finite = [](float v) { return std::isfinite(v); };
  if (!std::all_of(layer.weights.begin(), layer.weights.end(), finite) ||
      !std::all_of(layer.bias.begin(), layer.bias.end(), finite)) {
    throw ModelError("non-finite weight", index);
  }
}

void apply_activation(Activation act, std::vector<float>& values) {
  if (act == Activation::kReLU) {
    for (float& v : values) v = std::max(v, 0.0f);
  }
}

std::vector<float> run_dense(const Layer& layer, const std::vector<float>& in) {
  std::vector<float> out(static_cast<std::size_t>(layer.outputs));
  const std::size_t n_in = static_cast<std::size_t>(layer.inputs);
  for (std::size_t o = 0; o < out.size(); ++o) {
    const float* w = layer.weights.data() + o * n_in;
    float acc = layer.bias[o];
    for (std::size_t i = 0; i < n_in; ++i) acc += w[i] * in[i];
    out[o] = acc;
  }
  apply_activation(layer.activation, out);
  return out;
}

std::vector<float> run_conv(const Layer& layer, const std::vector<float>& in) {
  const TensorShape& is = layer.input_shape;
  const TensorShape& os = layer.output_shape;
  const int k = layer.kernel;
  const int cin = is.channels;
  std::vector<float> out(os.size());
  const std::size_t filter_size = static_cast<std::size_t>(k) * k * cin;
  for (int y = 0; y < os.height; ++y) {
    for (int x = 0; x < os.width; ++x) {
      for (int oc = 0; oc < os.channels; ++oc) {
        const float* w = layer.weights.data() + oc * filter_size;
        float acc = layer.bias[oc];
        for (int ky = 0; ky < k; ++ky) {
          const float* row =
              in.data() + (static_cast<std::size_t>(y + ky) * is.width + x) * cin;
          const float* wrow = w + static_cast<std::size_t>(ky) * k * cin;
          for (int j = 0; j < k * cin; ++j) acc += wrow[j] * row[j];
        }
        out[(static_cast<std::size_t>(y) * os.width + x) * os.channels + oc] =
            acc;
      }
    }
  }
  apply_activation(layer.activation, out);
  return out;
}

std::vector<float> run_maxpool(const Layer& layer,
                               const std::vector<float>& in) {
  const TensorShape& is = layer.input_shape;
  const TensorShape& os = layer.output_shape;
  std::vector<float> out(os.size());
  auto at = [&](int y, int x, int c) {
    return in[(static_cast<std::size_t>(y) * is.width + x) * is.channels + c];
  };
  for (int y = 0; y < os.height; ++y) {
    for (int x = 0; x < os.width; ++x) {
      for (int c = 0; c < os.channels; ++c) {
        const float m = std::max(
            std::max(at(2 * y, 2 * x, c), at(2 * y, 2 * x + 1, c)),
            std::max(at(2 * y + 1, 2 * x, c), at(2 * y + 1, 2 * x + 1, c)));
        out[(static_cast<std::size_t>(y) * os.width + x) * os.channels + c] = m;
      }
    }
  }
  return out;
}

std::vector<float> run_softmax(const std::vector<float>& in) {
  std::vector<float> out(in.size());
  const float peak = *std::max_element(in.begin(), in.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < in.size(); ++i) {
    out[i] = std::exp(in[i] - peak);
    sum += out[i];
  }
  for (float& v : out) v = static_cast<float>(v / sum);
  return out;
}

LayerKind parse_kind(const std::string& s, int index) {
  if (s == "dense") return LayerKind::kDense;
  if (s == "conv2d") return LayerKind::kConv2D;
  if (s == "relu") return LayerKind::kReLU;
  if (s == "maxpool2") return LayerKind::kMaxPool2;
  if (s == "flatten") return LayerKind::kFlatten;
  if (s == "softmax") return LayerKind::kSoftmax;
  throw ModelError("unknown layer kind '" + s + "'", index);
}

Activation parse_activation(const json& j, int index) {
  const std::string s = j.value("activation", std::string("none"));
  if (s == "none" || s == "linear") return Activation::kNone;
  if (s == "relu") return Activation::kReLU;
  throw ModelError("unknown activation '" + s + "'", index);
}

int require_int(const json& j, const char* key, int index) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw ModelError(std::string("missing integer field '") + key + "'",
                     index);
  }
  return j.at(key).get<int>();
}

}  // namespace

ModelError::ModelError(const std::string& what, int layer)
    : Error(layer_prefix(layer) + what), layer_(layer) {}

std::string to_string(LayerKind kind) {
  switch (kind) {
    case LayerKind::kDense: return "dense";
    case LayerKind::kConv2D: return "conv2d";
    case LayerKind::kReLU: return "relu";
    case LayerKind::kMaxPool2: return "maxpool2";
    case LayerKind::kFlatten: return "flatten";
    case LayerKind::kSoftmax: return "softmax";
  }
  return "unknown";
}

std::string to_string(Precision precision) {
  return precision == Precision::kSingle ? "single" : "truncated-half";
}

std::size_t Layer::weight_count() const {
  switch (kind) {
    case LayerKind::kDense:
      return static_cast<std::size_t>(inputs) * outputs;
    case LayerKind::kConv2D:
      return static_cast<std::size_t>(outputs) * kernel * kernel * inputs;
    default:
      return 0;
  }
}

std::size_t Layer::bias_count() const {
  return (kind == LayerKind::kDense || kind == LayerKind::kConv2D)
             ? static_cast<std::size_t>(outputs)
             : 0;
}

std::size_t ActivationProfile::neuron_count() const {
  std::size_t n = 0;
  for (const auto& l : per_layer) {
    if (l.tracked) n += l.values.size();
  }
  return n;
}

Model::Model(TensorShape input_shape, std::vector<Layer> layers,
             int num_classes, Precision precision)
    : input_shape_(input_shape),
      layers_(std::move(layers)),
      num_classes_(num_classes),
      precision_(precision) {
  if (input_shape_.height <= 0 || input_shape_.width <= 0 ||
      (input_shape_.channels != 1 && input_shape_.channels != 3)) {
    throw ModelError("invalid input shape " + shape_text(input_shape_));
  }
  if (layers_.empty()) throw ModelError("model has no layers");
  if (num_classes_ <= 0) throw ModelError("num_classes must be positive");
  TensorShape shape = input_shape_;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    resolve_layer(layers_[i], shape, static_cast<int>(i),
                  i + 1 == layers_.size());
    shape = layers_[i].output_shape;
  }
  if (shape.size() != static_cast<std::size_t>(num_classes_)) {
    throw ModelError("final layer produces " + std::to_string(shape.size()) +
                         " values but num_classes is " +
                         std::to_string(num_classes_),
                     static_cast<int>(layers_.size()) - 1);
  }
}

std::size_t Model::parameter_count() const {
  std::size_t n = 0;
  for (const auto& l : layers_) n += l.weight_count() + l.bias_count();
  return n;
}

std::size_t Model::neuron_count() const {
  std::size_t n = 0;
  for (const auto& l : layers_) {
    if (l.kind != LayerKind::kSoftmax) n += l.output_shape.size();
  }
  return n;
}

ForwardResult Model::forward(const Image& input) const {
  if (input.height() != input_shape_.height ||
      input.width() != input_shape_.width ||
      input.channels() != input_shape_.channels) {
    throw ShapeError("model expects " + shape_text(input_shape_) +
                     " input, got " + input.shape_string());
  }
  ForwardResult result;
  result.profile.per_layer.reserve(layers_.size());
  std::vector<float> current(input.data().begin(), input.data().end());
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const Layer& layer = layers_[i];
    std::vector<float> next;
    switch (layer.kind) {
      case LayerKind::kDense: next = run_dense(layer, current); break;
      case LayerKind::kConv2D: next = run_conv(layer, current); break;
      case LayerKind::kReLU:
        next = current;
        apply_activation(Activation::kReLU, next);
        break;
      case LayerKind::kMaxPool2: next = run_maxpool(layer, current); break;
      case LayerKind::kFlatten: next = current; break;
      case LayerKind::kSoftmax: next = run_softmax(current); break;
    }
    result.profile.per_layer.push_back(
        {static_cast<int>(i), layer.kind != LayerKind::kSoftmax, next});
    current = std::move(next);
  }
  result.logits = std::move(current);
  return result;
}

std::vector<float> Model::logits(const Image& input) const {
  return forward(input).logits;
}

ClassLabel Model::predict(const Image& input) const {
  return argmax_label(logits(input));
}

ClassLabel argmax_label(std::span<const float> logits) {
  if (logits.empty()) throw Error("argmax of empty logits");
  // max_element returns the first maximum, which is the lowest index.
  return {static_cast<int>(std::max_element(logits.begin(), logits.end()) -
                           logits.begin())};
}

Model quantize_model(const Model& model) {
  // The round trip is a projection, so a truncated model passes through
  // unchanged.
  std::vector<Layer> layers = model.layers();
  for (std::size_t i = 0; i < layers.size(); ++i) {
    auto truncate = [&](std::vector<float>& values, const char* what) {
      for (std::size_t j = 0; j < values.size(); ++j) {
        const float q = round_trip_half(values[j]);
        if (std::isinf(q)) {
          throw ModelError(std::string(what) + " " + std::to_string(j) +
                               " = " + std::to_string(values[j]) +
                               " overflows binary16",
                           static_cast<int>(i));
        }
        values[j] = q;
      }
    };
    truncate(layers[i].weights, "weight");
    truncate(layers[i].bias, "bias");
  }
  return Model(model.input_shape(), std::move(layers), model.num_classes(),
               Precision::kTruncatedHalf);
}

std::vector<float> read_float_blob(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open weights file " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() % 4 != 0) {
    throw ModelError("weights file " + path.string() +
                     " length is not a multiple of 4 bytes");
  }
  std::vector<float> values(bytes.size() / 4);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::uint32_t u = static_cast<std::uint32_t>(bytes[4 * i]) |
                            static_cast<std::uint32_t>(bytes[4 * i + 1]) << 8 |
                            static_cast<std::uint32_t>(bytes[4 * i + 2]) << 16 |
                            static_cast<std::uint32_t>(bytes[4 * i + 3]) << 24;
    values[i] = std::bit_cast<float>(u);
  }
  return values;
}

void write_float_blob(const std::filesystem::path& path,
                      std::span<const float> values) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write weights file " + path.string());
  for (float v : values) {
    const std::uint32_t u = std::bit_cast<std::uint32_t>(v);
    const char b[4] = {static_cast<char>(u & 0xff),
                       static_cast<char>((u >> 8) & 0xff),
                       static_cast<char>((u >> 16) & 0xff),
                       static_cast<char>((u >> 24) & 0xff)};
    out.write(b, 4);
  }
  if (!out) throw Error("failed writing weights file " + path.string());
}

Model model_from_manifest(const std::string& manifest_text,
                          std::span<const float> blob) {
  json j;
  try {
    j = json::parse(manifest_text);
  } catch (const json::exception& e) {
    throw ModelError(std::string("malformed manifest: ") + e.what());
  }
  try {
    if (!j.is_object() || !j.contains("layers") || !j["layers"].is_array()) {
      throw ModelError("malformed manifest: expected an object with 'layers'");
    }
    if (j.contains("format") && j["format"] != kManifestFormat) {
      throw ModelError("unsupported manifest format " + j["format"].dump());
    }
    const json& in = j.at("input");
    TensorShape input_shape{require_int(in, "height", -1),
                            require_int(in, "width", -1),
                            in.value("channels", 1)};
    const int num_classes = require_int(j, "num_classes", -1);
    const std::string precision = j.value("precision", std::string("single"));
    Precision prec;
    if (precision == "single") {
      prec = Precision::kSingle;
    } else if (precision == "truncated-half") {
      prec = Precision::kTruncatedHalf;
    } else {
      throw ModelError("unknown precision '" + precision + "'");
    }

    std::vector<Layer> layers;
    std::size_t offset = 0;
    const auto& items = j["layers"];
    for (std::size_t i = 0; i < items.size(); ++i) {
      const int idx = static_cast<int>(i);
      const json& lj = items[i];
      if (!lj.is_object() || !lj.contains("kind") || !lj["kind"].is_string()) {
        throw ModelError("layer entry needs a string 'kind'", idx);
      }
      Layer layer;
      layer.kind = parse_kind(lj["kind"].get<std::string>(), idx);
      layer.activation = parse_activation(lj, idx);
      if (layer.kind == LayerKind::kDense) {
        layer.inputs = require_int(lj, "inputs", idx);
        layer.outputs = require_int(lj, "outputs", idx);
      } else if (layer.kind == LayerKind::kConv2D) {
        layer.inputs = require_int(lj, "in_channels", idx);
        layer.outputs = require_int(lj, "out_channels", idx);
        layer.kernel = require_int(lj, "kernel", idx);
      }
      if (layer.inputs < 0 || layer.outputs < 0 || layer.kernel < 0) {
        throw ModelError("negative layer dimension", idx);
      }
      const std::size_t nw = layer.weight_count();
      const std::size_t nb = layer.bias_count();
      if (offset + nw + nb > blob.size()) {
        throw ModelError("truncated weights blob: need " +
                             std::to_string(offset + nw + nb) +
                             " values, blob has " + std::to_string(blob.size()),
                         idx);
      }
      layer.weights.assign(blob.begin() + offset, blob.begin() + offset + nw);
      offset += nw;
      layer.bias.assign(blob.begin() + offset, blob.begin() + offset + nb);
      offset += nb;
      layers.push_back(std::move(layer));
    }
    if (offset != blob.size()) {
      throw ModelError("weights blob has " + std::to_string(blob.size()) +
                       " values but the manifest declares " +
                       std::to_string(offset));
    }
    return Model(input_shape, std::move(layers), num_classes, prec);
  } catch (const json::exception& e) {
    throw ModelError(std::string("malformed manifest: ") + e.what());
  }
}

Model load_model(const std::filesystem::path& manifest_path,
                 const std::filesystem::path& weights_path) {
  std::ifstream in(manifest_path);
  if (!in) throw Error("cannot open manifest " + manifest_path.string());
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  const std::vector<float> blob = read_float_blob(weights_path);
  return model_from_manifest(text, blob);
}

std::string manifest_json(const Model& model) {
  json j;
  j["format"] = kManifestFormat;
  j["input"] = {{"height", model.input_shape().height},
                {"width", model.input_shape().width},
                {"channels", model.input_shape().channels}};
  j["num_classes"] = model.num_classes();
  j["precision"] = to_string(model.precision());
  json layers = json::array();
  for (const Layer& l : model.layers()) {
    json lj;
    lj["kind"] = to_string(l.kind);
    if (l.kind == LayerKind::kDense) {
      lj["inputs"] = l.inputs;
      lj["outputs"] = l.outputs;
    } else if (l.kind == LayerKind::kConv2D) {
      lj["in_channels"] = l.inputs;
      lj["out_channels"] = l.outputs;
      lj["kernel"] = l.kernel;
    }
    if (l.kind == LayerKind::kDense || l.kind == LayerKind::kConv2D) {
      lj["activation"] = l.activation == Activation::kReLU ? "relu" : "none";
    }
    layers.push_back(std::move(lj));
  }
  j["layers"] = std::move(layers);
  return j.dump(2) + "\n";
}

std::vector<float> flatten_parameters(const Model& model) {
  std::vector<float> out;
  out.reserve(model.parameter_count());
  for (const Layer& l : model.layers()) {
    out.insert(out.end(), l.weights.begin(), l.weights.end());
    out.insert(out.end(), l.bias.begin(), l.bias.end());
  }
  return out;
}

void save_model(const Model& model, const std::filesystem::path& manifest_path,
                const std::filesystem::path& weights_path) {
  std::ofstream out(manifest_path, std::ios::trunc);
  if (!out) throw Error("cannot write manifest " + manifest_path.string());
  out << manifest_json(model);
  write_float_blob(weights_path, flatten_parameters(model));
}

}  // namespace swarmtest
