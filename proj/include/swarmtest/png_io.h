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

#ifndef SWARMTEST_PNG_IO_H_
#define SWARMTEST_PNG_IO_H_

#include <filesystem>

#include "swarmtest/image.h"

namespace swarmtest {

// 8-bit grayscale or RGB PNG; each value is stored as round(value * 255).
void write_png(const std::filesystem::path& path, const Image& image);

// Loads a PNG as 1 channel (gray, gray+alpha) or 3 channels (everything
// else), alpha dropped, bytes scaled by 1/255.
Image read_png(const std::filesystem::path& path);

}  // namespace swarmtest

#endif  // SWARMTEST_PNG_IO_H_
