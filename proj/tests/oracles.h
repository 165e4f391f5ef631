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

// Independent reference implementations used as test oracles. They share no
// code with the library: straight loops in double precision written from the
// documented semantics.

#ifndef SWARMTEST_TESTS_ORACLES_H_
#define SWARMTEST_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace oracle {

// binary16 bit pattern -> value, by the textbook formula.
inline double half_value(std::uint16_t bits) {
  const int sign = bits >> 15;
  const int exponent = (bits >> 10) & 0x1f;
  const int mantissa = bits & 0x3ff;
  double v;
  if (exponent == 0) {
    v = std::ldexp(static_cast<double>(mantissa), -24);
  } else if (exponent == 31) {
    v = mantissa == 0 ? std::numeric_limits<double>::infinity()
                      : std::numeric_limits<double>::quiet_NaN();
  } else {
    v = std::ldexp(1024.0 + mantissa, exponent - 25);
  }
  return sign ? -v : v;
}

// Nearest binary16 value to x (ties to the even bit pattern), found by
// binary search over the monotone table of finite non-negative encodings.
// Values at or beyond the midpoint between 65504 and 65536 overflow to inf.
inline double round_to_half(double x) {
  if (std::isnan(x)) return x;
  const double mag = std::fabs(x);
  double result;
  if (mag >= 65520.0) {
    result = std::numeric_limits<double>::infinity();
  } else {
    int lo = 0, hi = 0x7bff;  // half_value is increasing on [0, 0x7bff]
    while (hi - lo > 1) {
      const int mid = (lo + hi) / 2;
      if (half_value(static_cast<std::uint16_t>(mid)) <= mag) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const double a = half_value(static_cast<std::uint16_t>(lo));
    const double b = half_value(static_cast<std::uint16_t>(hi));
    if (mag <= a) {
      result = a;
    } else if (mag - a < b - mag) {
      result = a;
    } else if (b - mag < mag - a) {
      result = b;
    } else {
      result = (lo % 2 == 0) ? a : b;
    }
  }
  return std::signbit(x) ? -result : result;
}

// Mean SSIM over all window positions, per-window statistics computed
// directly from the pixels. `a`, `b` are single-channel row-major images.
inline double ssim(const std::vector<double>& a, const std::vector<double>& b,
                   int h, int w, int window, double range = 1.0) {
  // Square window, clipped to the smaller image side.
  const int win_h = std::max(1, std::min({window, h, w}));
  const int win_w = win_h;
  const double c1 = (0.01 * range) * (0.01 * range);
  const double c2 = (0.03 * range) * (0.03 * range);
  const double n = static_cast<double>(win_h) * win_w;
  double total = 0.0;
  int count = 0;
  for (int y0 = 0; y0 + win_h <= h; ++y0) {
    for (int x0 = 0; x0 + win_w <= w; ++x0) {
      double ma = 0, mb = 0;
      for (int y = y0; y < y0 + win_h; ++y) {
        for (int x = x0; x < x0 + win_w; ++x) {
          ma += a[y * w + x];
          mb += b[y * w + x];
        }
      }
      ma /= n;
      mb /= n;
      double va = 0, vb = 0, cov = 0;
      for (int y = y0; y < y0 + win_h; ++y) {
        for (int x = x0; x < x0 + win_w; ++x) {
          const double da = a[y * w + x] - ma;
          const double db = b[y * w + x] - mb;
          va += da * da;
          vb += db * db;
          cov += da * db;
        }
      }
      va /= n;
      vb /= n;
      cov /= n;
      total += ((2 * ma * mb + c1) * (2 * cov + c2)) /
               ((ma * ma + mb * mb + c1) * (va + vb + c2));
      ++count;
    }
  }
  return total / count;
}

// Direct 2-D Gaussian blur with replicated borders (radius ceil(3 sigma),
// at least 1), single channel.
inline std::vector<double> blur(const std::vector<double>& img, int h, int w,
                                double sigma) {
  const int r = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  std::vector<double> k(2 * r + 1);
  double sum = 0;
  for (int i = -r; i <= r; ++i) {
    k[i + r] = std::exp(-(i * i) / (2 * sigma * sigma));
    sum += k[i + r];
  }
  for (double& v : k) v /= sum;
  std::vector<double> out(img.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0;
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
          const int yy = std::clamp(y + dy, 0, h - 1);
          const int xx = std::clamp(x + dx, 0, w - 1);
          acc += k[dy + r] * k[dx + r] * img[yy * w + xx];
        }
      }
      out[y * w + x] = acc;
    }
  }
  return out;
}

// Pixel chain without noise: contrast about the mean, brightness, blur,
// unsharp mask (sigma 1), clamp.
inline std::vector<double> pixel_chain(std::vector<double> img, int h, int w,
                                       double gain, double shift,
                                       double sigma, double sharpen) {
  double mean = 0;
  for (double v : img) mean += v;
  mean /= img.size();
  for (double& v : img) v = (v - mean) * gain + mean + shift;
  if (sigma > 1e-3) img = blur(img, h, w, sigma);
  if (sharpen != 0) {
    const std::vector<double> low = blur(img, h, w, 1.0);
    for (std::size_t i = 0; i < img.size(); ++i) {
      img[i] += sharpen * (img[i] - low[i]);
    }
  }
  for (double& v : img) v = std::clamp(v, 0.0, 1.0);
  return img;
}

// Covered units of one layer: min-max scale, strict threshold.
inline std::vector<bool> covered_units(const std::vector<double>& values,
                                       double threshold) {
  std::vector<bool> out(values.size(), false);
  if (values.empty()) return out;
  const double lo = *std::min_element(values.begin(), values.end());
  const double hi = *std::max_element(values.begin(), values.end());
  if (hi == lo) return out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[i] = (values[i] - lo) / (hi - lo) > threshold;
  }
  return out;
}

}  // namespace oracle

#endif  // SWARMTEST_TESTS_ORACLES_H_
