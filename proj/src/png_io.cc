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

#include "swarmtest/png_io.h"

#include <png.h>

#include <cmath>
#include <cstring>
#include <vector>

namespace swarmtest {

void write_png(const std::filesystem::path& path, const Image& image) {
  png_image out;
  std::memset(&out, 0, sizeof(out));
  out.version = PNG_IMAGE_VERSION;
  out.width = static_cast<png_uint_32>(image.width());
  out.height = static_cast<png_uint_32>(image.height());
  out.format = image.channels() == 1 ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
  std::vector<png_byte> bytes(image.size());
  auto data = image.data();
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    bytes[i] = static_cast<png_byte>(std::lround(data[i] * 255.0f));
  }
  if (!png_image_write_to_file(&out, path.c_str(), 0, bytes.data(), 0,
                               nullptr)) {
    const std::string msg = out.message;
    png_image_free(&out);
    throw Error("cannot write PNG " + path.string() + ": " + msg);
  }
}

Image read_png(const std::filesystem::path& path) {
  png_image in;
  std::memset(&in, 0, sizeof(in));
  in.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&in, path.c_str())) {
    throw Error("cannot read PNG " + path.string() + ": " + in.message);
  }
  const bool gray = (in.format & PNG_FORMAT_FLAG_COLOR) == 0;
  in.format = gray ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
  std::vector<png_byte> bytes(PNG_IMAGE_SIZE(in));
  if (!png_image_finish_read(&in, nullptr, bytes.data(), 0, nullptr)) {
    const std::string msg = in.message;
    png_image_free(&in);
    throw Error("cannot decode PNG " + path.string() + ": " + msg);
  }
  std::vector<float> data(bytes.size());
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    data[i] = static_cast<float>(bytes[i]) / 255.0f;
  }
  return Image(static_cast<int>(in.height), static_cast<int>(in.width),
               gray ? 1 : 3, std::move(data));
}

}  // namespace swarmtest
