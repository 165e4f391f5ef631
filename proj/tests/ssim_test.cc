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
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"
#include "swarmtest/ssim.h"
#include "test_util.h"

namespace swarmtest {
namespace {

std::vector<double> channel(const Image& img, int c) {
  std::vector<double> out;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) out.push_back(img.at(y, x, c));
  }
  return out;
}

double oracle_ssim(const Image& a, const Image& b, int window = 7) {
  double total = 0.0;
  for (int c = 0; c < a.channels(); ++c) {
    total += oracle::ssim(channel(a, c), channel(b, c), a.height(), a.width(),
                          window);
  }
  return total / a.channels();
}

// b = a blended with noise, so pairs span weak to strong similarity.
Image perturbed(std::mt19937_64& rng, const Image& a, double mix) {
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  std::vector<float> d(a.data().begin(), a.data().end());
  for (float& v : d) v = static_cast<float>((1 - mix) * v + mix * u(rng));
  return Image(a.height(), a.width(), a.channels(), std::move(d));
}

TEST(Ssim, IdenticalImagesScoreOne) {
  std::mt19937_64 gen(1);
  for (int i = 0; i < 10; ++i) {
    const Image a = testing::random_image(gen, 12 + i, 9 + i, i % 2 ? 3 : 1);
    EXPECT_NEAR(ssim(a, a), 1.0, 1e-9);
  }
  const Image flat(8, 8, 1, std::vector<float>(64, 0.3f));
  EXPECT_NEAR(ssim(flat, flat), 1.0, 1e-9);
}

TEST(Ssim, SmallPerturbationScoresBelowOne) {
  std::mt19937_64 gen(2);
  const Image a = testing::random_image(gen, 10, 10);
  Image b = a;
  b.at(4, 4) = b.at(4, 4) > 0.5f ? b.at(4, 4) - 0.01f : b.at(4, 4) + 0.01f;
  EXPECT_LT(ssim(a, b), 1.0);
}

TEST(Ssim, Symmetric) {
  std::mt19937_64 gen(3);
  for (int i = 0; i < 10; ++i) {
    const Image a = testing::random_image(gen, 14, 11);
    const Image b = perturbed(gen, a, 0.1 * i);
    EXPECT_NEAR(ssim(a, b), ssim(b, a), 1e-12);
  }
}

TEST(Ssim, RandomPairsMatchOracle) {
  std::mt19937_64 gen(4);
  const int sizes[][2] = {{28, 28}, {10, 13}, {7, 7}, {5, 9}, {16, 8}};
  for (int i = 0; i < 20; ++i) {
    const int h = sizes[i % 5][0], w = sizes[i % 5][1];
    const Image a = testing::random_image(gen, h, w);
    const Image b = perturbed(gen, a, 0.05 * i);
    ASSERT_NEAR(ssim(a, b), oracle_ssim(a, b), 1e-6) << i;
  }
}

TEST(Ssim, WindowSizesMatchOracle) {
  std::mt19937_64 gen(5);
  const Image a = testing::random_image(gen, 12, 12);
  const Image b = perturbed(gen, a, 0.4);
  for (int window : {1, 3, 7, 11, 20}) {
    SsimOptions opts;
    opts.window = window;
    EXPECT_NEAR(ssim(a, b, opts), oracle_ssim(a, b, window), 1e-6) << window;
  }
}

TEST(Ssim, ColorAveragesChannels) {
  std::mt19937_64 gen(6);
  for (int i = 0; i < 5; ++i) {
    const Image a = testing::random_image(gen, 9, 10, 3);
    const Image b = perturbed(gen, a, 0.2 * i);
    EXPECT_NEAR(ssim(a, b), oracle_ssim(a, b), 1e-6) << i;
  }
}

TEST(Ssim, InvertedImageIsNegative) {
  std::mt19937_64 gen(7);
  const Image a = testing::random_image(gen, 12, 12);
  std::vector<float> d(a.data().begin(), a.data().end());
  for (float& v : d) v = 1.0f - v;
  const double s = ssim(a, Image(12, 12, 1, d));
  EXPECT_LT(s, 0.0);
  EXPECT_GE(s, -1.0);
}

TEST(Ssim, ShapeMismatchThrows) {
  EXPECT_THROW(ssim(Image(4, 4, 1), Image(4, 5, 1)), ShapeError);
  EXPECT_THROW(ssim(Image(4, 4, 1), Image(4, 4, 3)), ShapeError);
}

}  // namespace
}  // namespace swarmtest
