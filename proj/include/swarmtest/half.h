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

#ifndef SWARMTEST_HALF_H_
#define SWARMTEST_HALF_H_

#include <cstdint>

namespace swarmtest {

// IEEE-754 binary16 conversions. Rounding is round-to-nearest, ties to even,
// including the subnormal range. Values too large for binary16 become +-inf
// and NaN stays NaN (quiet).
std::uint16_t float_to_half_bits(float value);
float half_bits_to_float(std::uint16_t bits);

// float -> binary16 -> float.
inline float round_trip_half(float value) {
  return half_bits_to_float(float_to_half_bits(value));
}

// Largest finite binary16 value.
inline constexpr float kHalfMax = 65504.0f;

}  // namespace swarmtest

#endif  // SWARMTEST_HALF_H_
