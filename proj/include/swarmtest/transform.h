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

// Compound image transformation driven by an 11-component parameter vector.
//
// One vector yields five mutants: the pixel-value chain alone, and the
// pixel-value chain followed by exactly one of four affine warps.

#ifndef SWARMTEST_TRANSFORM_H_
#define SWARMTEST_TRANSFORM_H_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "swarmtest/image.h"
#include "swarmtest/random.h"
#include "swarmtest/ssim.h"

namespace swarmtest {

enum class TransformParam : std::size_t {
  kContrastGain = 0,
  kBrightnessShift,
  kBlurSigma,
  kSharpenAmount,
  kNoiseAmplitude,
  kTranslateX,  // fraction of image width
  kTranslateY,  // fraction of image height
  kScaleX,
  kScaleY,
  kShear,        // horizontal shear factor
  kRotationDeg,  // counter-clockwise, degrees
};

inline constexpr std::size_t kTransformDims = 11;

std::string param_name(TransformParam p);

struct TransformVector {
  std::array<double, kTransformDims> values{};

  double operator[](TransformParam p) const {
    return values[static_cast<std::size_t>(p)];
  }
  double& operator[](TransformParam p) {
    return values[static_cast<std::size_t>(p)];
  }

  // gain 1, scales 1, everything else 0.
  static TransformVector identity();
  static TransformVector from(std::span<const double> v);

  friend bool operator==(const TransformVector&,
                         const TransformVector&) = default;
};

class TransformError : public Error {
 public:
  using Error::Error;
};

struct Bounds {
  std::array<double, kTransformDims> low{};
  std::array<double, kTransformDims> high{};

  // Conservative label-preserving ranges for small digit/object images.
  static Bounds defaults();

  // Throws TransformError if low > high anywhere, any value is non-finite, or
  // the identity vector lies outside the box.
  void validate() const;
  bool contains(const TransformVector& v) const;
  // Throws TransformError naming the first offending parameter.
  void check(const TransformVector& v) const;
};

enum class AffineKind { kTranslate, kScale, kShear, kRotate };
inline constexpr std::array<AffineKind, 4> kAffineKinds = {
    AffineKind::kTranslate, AffineKind::kScale, AffineKind::kShear,
    AffineKind::kRotate};

// Provenance of a mutant within its batch.
enum class MutantPath { kPixelOnly = 0, kTranslate, kScale, kShear, kRotate };
inline constexpr std::size_t kBatchSize = 5;

std::string to_string(MutantPath path);
std::optional<MutantPath> parse_mutant_path(const std::string& name);
MutantPath path_for(AffineKind kind);

struct MutantBatch {
  Image pixel_only;
  std::array<Image, 4> per_affine;  // indexed like kAffineKinds

  const Image& at(MutantPath path) const;
};

struct ValidMutant {
  MutantPath path;
  Image image;
  double ssim = 0.0;
};

struct TransformOptions {
  // Blur sigmas at or below this are treated as "no blur".
  double blur_epsilon = 1e-3;
  // Gaussian sigma of the unsharp mask's low-pass copy.
  double sharpen_sigma = 1.0;
  SsimOptions ssim;
};

class TransformEngine {
 public:
  explicit TransformEngine(Bounds bounds = Bounds::defaults(),
                           TransformOptions options = {});

  const Bounds& bounds() const { return bounds_; }
  const TransformOptions& options() const { return options_; }

  // contrast -> brightness -> blur -> sharpen -> noise, then clamp to [0, 1].
  // Stages at their identity parameter are skipped entirely, so the identity
  // vector reproduces the source bit for bit. Noise consumes `rng` only when
  // its amplitude is positive.
  Image apply_pixel_chain(const Image& source, const TransformVector& v,
                          Rng& rng) const;

  // Inverse-mapped warp about the image center, bilinear sampling, zero fill.
  Image apply_affine(const Image& source, AffineKind kind,
                     const TransformVector& v) const;

  MutantBatch expand(const Image& source, const TransformVector& v,
                     Rng& rng) const;

  // Mutants with ssim(source, mutant) >= tau, in batch order.
  std::vector<ValidMutant> filter_valid(const Image& source,
                                        const MutantBatch& batch,
                                        double tau) const;

 private:
  Bounds bounds_;
  TransformOptions options_;
};

// Separable Gaussian blur with replicated borders; exposed for tests.
Image gaussian_blur(const Image& source, double sigma);

}  // namespace swarmtest

#endif  // SWARMTEST_TRANSFORM_H_
