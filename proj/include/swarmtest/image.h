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

#ifndef SWARMTEST_IMAGE_H_
#define SWARMTEST_IMAGE_H_

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace swarmtest {

// Base class for every error raised by the library. Callers that only need
// to distinguish "our" failures from std::bad_alloc and friends catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

// H x W x C grid of intensities in [0, 1], stored row-major with channels
// interleaved (HWC). Immutable in practice: every transform returns a new
// Image.
class Image {
 public:
  Image() = default;

  // Zero-filled image. Throws ShapeError for non-positive dimensions or a
  // channel count other than 1 or 3.
  Image(int height, int width, int channels);

  // Takes ownership of `data`. Throws ShapeError if the length does not match
  // or any element is non-finite or outside [0, 1].
  Image(int height, int width, int channels, std::vector<float> data);

  int height() const { return height_; }
  int width() const { return width_; }
  int channels() const { return channels_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  float at(int y, int x, int c = 0) const {
    return data_[index(y, x, c)];
  }
  float& at(int y, int x, int c = 0) { return data_[index(y, x, c)]; }

  std::span<const float> data() const { return data_; }
  std::span<float> mutable_data() { return data_; }

  bool same_shape(const Image& other) const {
    return height_ == other.height_ && width_ == other.width_ &&
           channels_ == other.channels_;
  }

  // Clamps every element into [0, 1]. NaN becomes 0.
  void clamp_unit();

  friend bool operator==(const Image& a, const Image& b) {
    return a.same_shape(b) && a.data_ == b.data_;
  }

  std::string shape_string() const;

 private:
  std::size_t index(int y, int x, int c) const {
    return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
  }

  int height_ = 0;
  int width_ = 0;
  int channels_ = 0;
  std::vector<float> data_;
};

// Largest absolute per-element difference. Shapes must match.
double max_abs_diff(const Image& a, const Image& b);

}  // namespace swarmtest

#endif  // SWARMTEST_IMAGE_H_
