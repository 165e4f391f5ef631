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

#include "swarmtest/transform.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace swarmtest {
namespace {

using P = TransformParam;

constexpr std::array<const char*, kTransformDims> kParamNames = {
    "contrast_gain", "brightness_shift", "blur_sigma", "sharpen_amount",
    "noise_amplitude", "translate_x", "translate_y", "scale_x",
    "scale_y", "shear", "rotation_deg"};

std::vector<double> gaussian_kernel(double sigma) {
  const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  std::vector<double> k(2 * radius + 1);
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double v = std::exp(-(i * i) / (2.0 * sigma * sigma));
    k[i + radius] = v;
    sum += v;
  }
  for (double& v : k) v /= sum;
  return k;
}

// 2x2 matrix mapping destination offsets (from center) to source offsets,
// plus a source-space translation.
struct InverseMap {
  double a = 1, b = 0, c = 0, d = 1;  // [[a b] [c d]] applied to (dx, dy)
  double tx = 0, ty = 0;
};

InverseMap inverse_map(AffineKind kind, const TransformVector& v, int height,
                       int width) {
  InverseMap m;
  switch (kind) {
    case AffineKind::kTranslate:
      m.tx = -v[P::kTranslateX] * width;
      m.ty = -v[P::kTranslateY] * height;
      break;
    case AffineKind::kScale:
      m.a = 1.0 / v[P::kScaleX];
      m.d = 1.0 / v[P::kScaleY];
      break;
    case AffineKind::kShear:
      // forward: x' = x + k * y  =>  inverse: x = x' - k * y'
      m.b = -v[P::kShear];
      break;
    case AffineKind::kRotate: {
      // Counter-clockwise on screen (y points down). Forward map is
      // [[cos, sin], [-sin, cos]]; its inverse is the transpose.
      const double t = v[P::kRotationDeg] * std::numbers::pi / 180.0;
      const double cs = std::cos(t);
      const double sn = std::sin(t);
      m.a = cs;
      m.b = -sn;
      m.c = sn;
      m.d = cs;
      break;
    }
  }
  return m;
}

bool is_identity(AffineKind kind, const TransformVector& v) {
  switch (kind) {
    case AffineKind::kTranslate:
      return v[P::kTranslateX] == 0.0 && v[P::kTranslateY] == 0.0;
    case AffineKind::kScale:
      return v[P::kScaleX] == 1.0 && v[P::kScaleY] == 1.0;
    case AffineKind::kShear:
      return v[P::kShear] == 0.0;
    case AffineKind::kRotate:
      return v[P::kRotationDeg] == 0.0;
  }
  return false;
}

}  // namespace

std::string param_name(TransformParam p) {
  return kParamNames[static_cast<std::size_t>(p)];
}

TransformVector TransformVector::identity() {
  TransformVector v;
  v[P::kContrastGain] = 1.0;
  v[P::kScaleX] = 1.0;
  v[P::kScaleY] = 1.0;
  return v;
}

TransformVector TransformVector::from(std::span<const double> values) {
  if (values.size() != kTransformDims) {
    throw TransformError("transform vector needs " +
                         std::to_string(kTransformDims) + " components, got " +
                         std::to_string(values.size()));
  }
  TransformVector v;
  std::copy(values.begin(), values.end(), v.values.begin());
  return v;
}

Bounds Bounds::defaults() {
  Bounds b;
  auto set = [&](P p, double lo, double hi) {
    b.low[static_cast<std::size_t>(p)] = lo;
    b.high[static_cast<std::size_t>(p)] = hi;
  };
  set(P::kContrastGain, 0.7, 1.3);
  set(P::kBrightnessShift, -0.15, 0.15);
  set(P::kBlurSigma, 0.0, 1.5);
  set(P::kSharpenAmount, 0.0, 0.5);
  set(P::kNoiseAmplitude, 0.0, 0.05);
  set(P::kTranslateX, -0.1, 0.1);
  set(P::kTranslateY, -0.1, 0.1);
  set(P::kScaleX, 0.85, 1.15);
  set(P::kScaleY, 0.85, 1.15);
  set(P::kShear, -0.15, 0.15);
  set(P::kRotationDeg, -15.0, 15.0);
  return b;
}

void Bounds::validate() const {
  for (std::size_t i = 0; i < kTransformDims; ++i) {
    if (!std::isfinite(low[i]) || !std::isfinite(high[i])) {
      throw TransformError("non-finite bound for " +
                           std::string(kParamNames[i]));
    }
    if (low[i] > high[i]) {
      throw TransformError("low > high for " + std::string(kParamNames[i]));
    }
  }
  if (!contains(TransformVector::identity())) {
    throw TransformError("bounds exclude the identity transformation");
  }
  if (low[static_cast<std::size_t>(P::kScaleX)] <= 0.0 ||
      low[static_cast<std::size_t>(P::kScaleY)] <= 0.0) {
    throw TransformError("scale bounds must be positive");
  }
  if (low[static_cast<std::size_t>(P::kBlurSigma)] < 0.0 ||
      low[static_cast<std::size_t>(P::kNoiseAmplitude)] < 0.0) {
    throw TransformError("blur sigma and noise amplitude must be >= 0");
  }
}

bool Bounds::contains(const TransformVector& v) const {
  for (std::size_t i = 0; i < kTransformDims; ++i) {
    if (!(v.values[i] >= low[i] && v.values[i] <= high[i])) return false;
  }
  return true;
}

void Bounds::check(const TransformVector& v) const {
  for (std::size_t i = 0; i < kTransformDims; ++i) {
    if (!(v.values[i] >= low[i] && v.values[i] <= high[i])) {
      throw TransformError(std::string(kParamNames[i]) + " = " +
                           std::to_string(v.values[i]) + " outside [" +
                           std::to_string(low[i]) + ", " +
                           std::to_string(high[i]) + "]");
    }
  }
}

std::string to_string(MutantPath path) {
  switch (path) {
    case MutantPath::kPixelOnly: return "pixel_only";
    case MutantPath::kTranslate: return "translate";
    case MutantPath::kScale: return "scale";
    case MutantPath::kShear: return "shear";
    case MutantPath::kRotate: return "rotate";
  }
  return "unknown";
}

std::optional<MutantPath> parse_mutant_path(const std::string& name) {
  for (std::size_t i = 0; i < kBatchSize; ++i) {
    const auto p = static_cast<MutantPath>(i);
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

MutantPath path_for(AffineKind kind) {
  return static_cast<MutantPath>(static_cast<int>(kind) + 1);
}

const Image& MutantBatch::at(MutantPath path) const {
  if (path == MutantPath::kPixelOnly) return pixel_only;
  return per_affine[static_cast<std::size_t>(path) - 1];
}

Image gaussian_blur(const Image& source, double sigma) {
  const std::vector<double> k = gaussian_kernel(sigma);
  const int radius = static_cast<int>(k.size() / 2);
  const int h = source.height();
  const int w = source.width();
  const int ch = source.channels();
  Image tmp(h, w, ch);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < ch; ++c) {
        double acc = 0.0;
        for (int i = -radius; i <= radius; ++i) {
          acc += k[i + radius] * source.at(y, std::clamp(x + i, 0, w - 1), c);
        }
        tmp.at(y, x, c) = static_cast<float>(acc);
      }
    }
  }
  Image out(h, w, ch);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < ch; ++c) {
        double acc = 0.0;
        for (int i = -radius; i <= radius; ++i) {
          acc += k[i + radius] * tmp.at(std::clamp(y + i, 0, h - 1), x, c);
        }
        out.at(y, x, c) = static_cast<float>(acc);
      }
    }
  }
  return out;
}

TransformEngine::TransformEngine(Bounds bounds, TransformOptions options)
    : bounds_(bounds), options_(options) {
  bounds_.validate();
}

Image TransformEngine::apply_pixel_chain(const Image& source,
                                         const TransformVector& v,
                                         Rng& rng) const {
  bounds_.check(v);
  // Intermediate values may leave [0, 1]; only the final result is clamped.
  Image img = source;
  const int ch = img.channels();
  auto data = img.mutable_data();

  const double gain = v[P::kContrastGain];
  if (gain != 1.0) {
    std::vector<double> mean(ch, 0.0);
    for (std::size_t i = 0; i < data.size(); ++i) mean[i % ch] += data[i];
    const double pixels = static_cast<double>(data.size() / ch);
    for (double& m : mean) m /= pixels;
    for (std::size_t i = 0; i < data.size(); ++i) {
      const double m = mean[i % ch];
      data[i] = static_cast<float>((data[i] - m) * gain + m);
    }
  }

  const double shift = v[P::kBrightnessShift];
  if (shift != 0.0) {
    for (float& x : data) x = static_cast<float>(x + shift);
  }

  const double sigma = v[P::kBlurSigma];
  if (sigma > options_.blur_epsilon) {
    img = gaussian_blur(img, sigma);
    data = img.mutable_data();
  }

  const double amount = v[P::kSharpenAmount];
  if (amount != 0.0) {
    const Image low = gaussian_blur(img, options_.sharpen_sigma);
    auto lp = low.data();
    for (std::size_t i = 0; i < data.size(); ++i) {
      data[i] = static_cast<float>(data[i] + amount * (data[i] - lp[i]));
    }
  }

  const double amp = v[P::kNoiseAmplitude];
  if (amp > 0.0) {
    for (float& x : data) x = static_cast<float>(x + uniform(rng, -amp, amp));
  }

  img.clamp_unit();
  return img;
}

Image TransformEngine::apply_affine(const Image& source, AffineKind kind,
                                    const TransformVector& v) const {
  bounds_.check(v);
  if (is_identity(kind, v)) return source;

  const int h = source.height();
  const int w = source.width();
  const int ch = source.channels();
  const double cx = (w - 1) / 2.0;
  const double cy = (h - 1) / 2.0;
  const InverseMap m = inverse_map(kind, v, h, w);

  Image out(h, w, ch);
  std::vector<double> acc(ch);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double dx = x - cx;
      const double dy = y - cy;
      const double sx = cx + m.a * dx + m.b * dy + m.tx;
      const double sy = cy + m.c * dx + m.d * dy + m.ty;
      const double fx0 = std::floor(sx);
      const double fy0 = std::floor(sy);
      const double fx = sx - fx0;
      const double fy = sy - fy0;
      // Coordinates far outside the image cannot contribute; skip before
      // converting to int.
      if (fx0 < -2.0 || fy0 < -2.0 || fx0 > w || fy0 > h) continue;
      const int x0 = static_cast<int>(fx0);
      const int y0 = static_cast<int>(fy0);
      std::fill(acc.begin(), acc.end(), 0.0);
      const double weights[4] = {(1 - fx) * (1 - fy), fx * (1 - fy),
                                 (1 - fx) * fy, fx * fy};
      const int xs[4] = {x0, x0 + 1, x0, x0 + 1};
      const int ys[4] = {y0, y0, y0 + 1, y0 + 1};
      for (int k = 0; k < 4; ++k) {
        if (weights[k] == 0.0) continue;
        if (xs[k] < 0 || xs[k] >= w || ys[k] < 0 || ys[k] >= h) continue;
        for (int c = 0; c < ch; ++c) {
          acc[c] += weights[k] * source.at(ys[k], xs[k], c);
        }
      }
      for (int c = 0; c < ch; ++c) {
        out.at(y, x, c) = static_cast<float>(acc[c]);
      }
    }
  }
  out.clamp_unit();
  return out;
}

MutantBatch TransformEngine::expand(const Image& source,
                                    const TransformVector& v, Rng& rng) const {
  MutantBatch batch;
  batch.pixel_only = apply_pixel_chain(source, v, rng);
  for (std::size_t k = 0; k < kAffineKinds.size(); ++k) {
    batch.per_affine[k] = apply_affine(batch.pixel_only, kAffineKinds[k], v);
  }
  return batch;
}

std::vector<ValidMutant> TransformEngine::filter_valid(
    const Image& source, const MutantBatch& batch, double tau) const {
  std::vector<ValidMutant> out;
  for (std::size_t i = 0; i < kBatchSize; ++i) {
    const auto path = static_cast<MutantPath>(i);
    const Image& mutant = batch.at(path);
    const double score = ssim(source, mutant, options_.ssim);
    if (score >= tau) out.push_back({path, mutant, score});
  }
  return out;
}

}  // namespace swarmtest
