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

#include "swarmtest/ssim.h"

#include <algorithm>
#include <cmath>
#include <vector>

namespace swarmtest {
namespace {

// Summed-area table with a zero row/column in front.
class IntegralImage {
 public:
  IntegralImage(int height, int width)
      : width_(width + 1),
        sums_(static_cast<std::size_t>(height + 1) * (width + 1), 0.0) {}

  double& at(int y, int x) {
    return sums_[static_cast<std::size_t>(y) * width_ + x];
  }
  double at(int y, int x) const {
    return sums_[static_cast<std::size_t>(y) * width_ + x];
  }

  // Sum over rows [y, y+n) and columns [x, x+n).
  double box(int y, int x, int n) const {
    return at(y + n, x + n) - at(y, x + n) - at(y + n, x) + at(y, x);
  }

 private:
  int width_;
  std::vector<double> sums_;
};

}  // namespace

double ssim(const Image& a, const Image& b, const SsimOptions& options) {
  if (!a.same_shape(b)) {
    throw ShapeError("ssim: shape mismatch " + a.shape_string() + " vs " +
                     b.shape_string());
  }
  if (a.empty()) throw ShapeError("ssim: empty image");
  // Exact 1 only for identical inputs; rounding must not promote a
  // non-identical pair to a perfect score.
  if (a == b) return 1.0;
  const int h = a.height();
  const int w = a.width();
  const int n = std::max(1, std::min({options.window, h, w}));
  const double c1 = (options.k1 * options.dynamic_range) *
                    (options.k1 * options.dynamic_range);
  const double c2 = (options.k2 * options.dynamic_range) *
                    (options.k2 * options.dynamic_range);
  const double inv_count = 1.0 / (static_cast<double>(n) * n);

  double total = 0.0;
  for (int c = 0; c < a.channels(); ++c) {
    IntegralImage sx(h, w), sy(h, w), sxx(h, w), syy(h, w), sxy(h, w);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const double va = a.at(y, x, c);
        const double vb = b.at(y, x, c);
        auto accumulate = [&](IntegralImage& t, double v) {
          t.at(y + 1, x + 1) = v + t.at(y, x + 1) + t.at(y + 1, x) - t.at(y, x);
        };
        accumulate(sx, va);
        accumulate(sy, vb);
        accumulate(sxx, va * va);
        accumulate(syy, vb * vb);
        accumulate(sxy, va * vb);
      }
    }
    double channel_sum = 0.0;
    int windows = 0;
    for (int y = 0; y + n <= h; ++y) {
      for (int x = 0; x + n <= w; ++x) {
        const double mx = sx.box(y, x, n) * inv_count;
        const double my = sy.box(y, x, n) * inv_count;
        const double vx = sxx.box(y, x, n) * inv_count - mx * mx;
        const double vy = syy.box(y, x, n) * inv_count - my * my;
        const double cxy = sxy.box(y, x, n) * inv_count - mx * my;
        channel_sum += ((2.0 * mx * my + c1) * (2.0 * cxy + c2)) /
                       ((mx * mx + my * my + c1) * (vx + vy + c2));
        ++windows;
      }
    }
    total += channel_sum / windows;
  }
  return std::min(total / a.channels(), std::nextafter(1.0, 0.0));
}

}  // namespace swarmtest
