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

#include "swarmtest/image.h"

#include <algorithm>
#include <cmath>

namespace swarmtest {
namespace {

void check_dims(int height, int width, int channels) {
  if (height <= 0 || width <= 0) {
    throw ShapeError("image dimensions must be positive, got " +
                     std::to_string(height) + "x" + std::to_string(width));
  }
  if (channels != 1 && channels != 3) {
    throw ShapeError("image channels must be 1 or 3, got " +
                     std::to_string(channels));
  }
}

}  // namespace

Image::Image(int height, int width, int channels)
    : height_(height), width_(width), channels_(channels) {
  check_dims(height, width, channels);
  data_.assign(static_cast<std::size_t>(height) * width * channels, 0.0f);
}

Image::Image(int height, int width, int channels, std::vector<float> data)
    : height_(height),
      width_(width),
      channels_(channels),
      data_(std::move(data)) {
  check_dims(height, width, channels);
  const std::size_t expected =
      static_cast<std::size_t>(height) * width * channels;
  if (data_.size() != expected) {
    throw ShapeError("image data length " + std::to_string(data_.size()) +
                     " does not match " + shape_string());
  }
  for (std::size_t i = 0; i < data_.size(); ++i) {
    const float v = data_[i];
    if (!std::isfinite(v) || v < 0.0f || v > 1.0f) {
      throw ShapeError("image element " + std::to_string(i) +
                       " is outside [0, 1]");
    }
  }
}

void Image::clamp_unit() {
  for (float& v : data_) {
    v = std::isnan(v) ? 0.0f : std::clamp(v, 0.0f, 1.0f);
  }
}

std::string Image::shape_string() const {
  return std::to_string(height_) + "x" + std::to_string(width_) + "x" +
         std::to_string(channels_);
}

double max_abs_diff(const Image& a, const Image& b) {
  if (!a.same_shape(b)) {
    throw ShapeError("max_abs_diff: shape mismatch " + a.shape_string() +
                     " vs " + b.shape_string());
  }
  double worst = 0.0;
  auto da = a.data();
  auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) {
    worst = std::max(worst, std::abs(static_cast<double>(da[i]) - db[i]));
  }
  return worst;
}

}  // namespace swarmtest
