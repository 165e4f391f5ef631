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
#include <cstdint>
#include <limits>
#include <random>

#include "gtest/gtest.h"
#include "oracles.h"
#include "swarmtest/half.h"

namespace swarmtest {
namespace {

TEST(Half, DecodesEveryPatternLikeTheOracle) {
  for (std::uint32_t b = 0; b <= 0xffff; ++b) {
    const auto bits = static_cast<std::uint16_t>(b);
    const double expected = oracle::half_value(bits);
    const float got = half_bits_to_float(bits);
    if (std::isnan(expected)) {
      EXPECT_TRUE(std::isnan(got)) << std::hex << b;
      continue;
    }
    ASSERT_EQ(static_cast<double>(got), expected) << std::hex << b;
    // Every non-NaN pattern survives the trip back, including -0.
    ASSERT_EQ(float_to_half_bits(got), bits) << std::hex << b;
  }
}

TEST(Half, MidpointsRoundToEven) {
  for (std::uint16_t b = 0; b < 0x7bff; ++b) {
    const double lo = oracle::half_value(b);
    const double hi = oracle::half_value(static_cast<std::uint16_t>(b + 1));
    const float mid = static_cast<float>((lo + hi) / 2);
    ASSERT_EQ(static_cast<double>(mid), (lo + hi) / 2);  // exact in float
    const double even = (b % 2 == 0) ? lo : hi;
    ASSERT_EQ(static_cast<double>(round_trip_half(mid)), even) << b;
    ASSERT_EQ(static_cast<double>(round_trip_half(-mid)), -even) << b;
    // Just off the midpoint the nearer neighbour wins.
    ASSERT_EQ(static_cast<double>(round_trip_half(std::nextafter(mid, 0.0f))), lo);
    ASSERT_EQ(static_cast<double>(round_trip_half(std::nextafter(mid, 1e9f))), hi);
  }
}

TEST(Half, KnownValues) {
  EXPECT_EQ(round_trip_half(0.1f), 0.0999755859375f);
  EXPECT_EQ(round_trip_half(0.5f), 0.5f);
  EXPECT_EQ(round_trip_half(65504.0f), 65504.0f);
  EXPECT_EQ(round_trip_half(65519.0f), 65504.0f);
  EXPECT_TRUE(std::isinf(round_trip_half(65520.0f)));
  EXPECT_TRUE(std::isinf(round_trip_half(70000.0f)));
  EXPECT_EQ(float_to_half_bits(70000.0f), 0x7c00);
  EXPECT_EQ(float_to_half_bits(-70000.0f), 0xfc00);
  // Smallest subnormal is 2^-24; half of it ties to even (zero).
  EXPECT_EQ(round_trip_half(std::ldexp(1.0f, -24)), std::ldexp(1.0f, -24));
  EXPECT_EQ(round_trip_half(std::ldexp(1.0f, -25)), 0.0f);
  EXPECT_EQ(round_trip_half(std::ldexp(3.0f, -26)), std::ldexp(1.0f, -24));
  EXPECT_TRUE(std::signbit(round_trip_half(-0.0f)));
  EXPECT_TRUE(std::isnan(round_trip_half(std::nanf(""))));
  EXPECT_TRUE(std::isinf(round_trip_half(std::numeric_limits<float>::infinity())));
}

TEST(Half, RandomWeightsMatchOracleAndAreIdempotent) {
  std::mt19937_64 rng(99);
  std::normal_distribution<float> weights(0.0f, 0.5f);
  std::uniform_real_distribution<float> wide(-65000.0f, 65000.0f);
  for (int i = 0; i < 1000000; ++i) {
    const float x = (i % 10 == 0) ? wide(rng) : weights(rng);
    const float once = round_trip_half(x);
    ASSERT_EQ(static_cast<double>(once), oracle::round_to_half(x)) << x;
    ASSERT_EQ(round_trip_half(once), once) << x;
  }
}

}  // namespace
}  // namespace swarmtest
