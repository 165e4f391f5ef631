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

#include "swarmtest/half.h"

#include <bit>

namespace swarmtest {

std::uint16_t float_to_half_bits(float value) {
  const std::uint32_t f = std::bit_cast<std::uint32_t>(value);
  const std::uint16_t sign = static_cast<std::uint16_t>((f >> 16) & 0x8000u);
  const std::uint32_t exp = (f >> 23) & 0xffu;
  std::uint32_t mant = f & 0x7fffffu;

  if (exp == 0xffu) {
    // inf stays inf; NaN keeps a nonzero quiet payload
    return static_cast<std::uint16_t>(sign | 0x7c00u | (mant ? 0x200u : 0u));
  }

  // Unbiased exponent, rebased to binary16 bias 15.
  const int half_exp = static_cast<int>(exp) - 127 + 15;

  if (half_exp >= 0x1f) {
    return static_cast<std::uint16_t>(sign | 0x7c00u);
  }

  if (half_exp <= 0) {
    // Subnormal or zero in binary16. Anything below half the smallest
    // subnormal (2^-25) rounds to zero.
    if (half_exp < -10) {
      return sign;
    }
    mant |= 0x800000u;  // implicit leading bit
    const int shift = 14 - half_exp;  // 13 + (1 - half_exp)
    const std::uint32_t kept = mant >> shift;
    const std::uint32_t rest = mant & ((1u << shift) - 1u);
    const std::uint32_t halfway = 1u << (shift - 1);
    std::uint32_t result = kept;
    if (rest > halfway || (rest == halfway && (kept & 1u))) {
      ++result;  // may carry into the smallest normal, which is correct
    }
    return static_cast<std::uint16_t>(sign | result);
  }

  std::uint32_t result =
      (static_cast<std::uint32_t>(half_exp) << 10) | (mant >> 13);
  const std::uint32_t rest = mant & 0x1fffu;
  if (rest > 0x1000u || (rest == 0x1000u && (result & 1u))) {
    ++result;  // carry may bump the exponent, up to and including inf
  }
  return static_cast<std::uint16_t>(sign | result);
}

float half_bits_to_float(std::uint16_t bits) {
  const std::uint32_t sign = static_cast<std::uint32_t>(bits & 0x8000u) << 16;
  const std::uint32_t exp = (bits >> 10) & 0x1fu;
  std::uint32_t mant = bits & 0x3ffu;

  std::uint32_t out;
  if (exp == 0x1fu) {
    out = sign | 0x7f800000u | (mant << 13);
  } else if (exp != 0) {
    out = sign | ((exp - 15 + 127) << 23) | (mant << 13);
  } else if (mant == 0) {
    out = sign;
  } else {
    // Normalize the subnormal.
    int e = -14;
    while ((mant & 0x400u) == 0) {
      mant <<= 1;
      --e;
    }
    mant &= 0x3ffu;
    out = sign | (static_cast<std::uint32_t>(e + 127) << 23) | (mant << 13);
  }
  return std::bit_cast<float>(out);
}

}  // namespace swarmtest
