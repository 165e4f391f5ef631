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

#ifndef SWARMTEST_SSIM_H_
#define SWARMTEST_SSIM_H_

#include "swarmtest/image.h"

namespace swarmtest {

struct SsimOptions {
  // Side of the square uniform window. Clipped to the image size for images
  // smaller than the window.
  int window = 7;
  double dynamic_range = 1.0;
  double k1 = 0.01;
  double k2 = 0.03;
};

// Mean structural similarity over every fully-contained window position,
// computed per channel and averaged over channels. Window statistics use
// population (1/N) variance and covariance. Throws ShapeError on mismatch.
double ssim(const Image& a, const Image& b, const SsimOptions& options = {});

}  // namespace swarmtest

#endif  // SWARMTEST_SSIM_H_
