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

#include "swarmtest/dataset.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <numeric>

#include "json.hpp"
#include "swarmtest/png_io.h"
#include "swarmtest/random.h"

namespace swarmtest {
namespace {

std::vector<unsigned char> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatasetError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::uint32_t be32(const std::vector<unsigned char>& b, std::size_t off) {
  return static_cast<std::uint32_t>(b[off]) << 24 |
         static_cast<std::uint32_t>(b[off + 1]) << 16 |
         static_cast<std::uint32_t>(b[off + 2]) << 8 |
         static_cast<std::uint32_t>(b[off + 3]);
}

void put_be32(std::ofstream& out, std::uint32_t v) {
  const char b[4] = {static_cast<char>(v >> 24), static_cast<char>(v >> 16),
                     static_cast<char>(v >> 8), static_cast<char>(v)};
  out.write(b, 4);
}

}  // namespace

std::vector<SeedInput> ingest_idx(const std::filesystem::path& images_path,
                                  const std::filesystem::path& labels_path) {
  const auto images = read_bytes(images_path);
  const auto labels = read_bytes(labels_path);
  if (images.size() < 16) {
    throw DatasetError("truncated IDX image header in " + images_path.string());
  }
  if (labels.size() < 8) {
    throw DatasetError("truncated IDX label header in " + labels_path.string());
  }
  if (be32(images, 0) != kIdxImagesMagic) {
    throw DatasetError("bad IDX image magic in " + images_path.string());
  }
  if (be32(labels, 0) != kIdxLabelsMagic) {
    throw DatasetError("bad IDX label magic in " + labels_path.string());
  }
  const std::uint32_t count = be32(images, 4);
  const std::uint32_t rows = be32(images, 8);
  const std::uint32_t cols = be32(images, 12);
  const std::uint32_t label_count = be32(labels, 4);
  if (count != label_count) {
    throw DatasetError("IDX count mismatch: " + std::to_string(count) +
                       " images vs " + std::to_string(label_count) + " labels");
  }
  if (rows == 0 || cols == 0 || rows > 65535 || cols > 65535) {
    throw DatasetError("unsupported IDX image size " + std::to_string(rows) +
                       "x" + std::to_string(cols));
  }
  const std::size_t pixels = static_cast<std::size_t>(rows) * cols;
  if (images.size() < 16 + pixels * count) {
    throw DatasetError("truncated IDX image data in " + images_path.string());
  }
  if (labels.size() < 8 + static_cast<std::size_t>(count)) {
    throw DatasetError("truncated IDX label data in " + labels_path.string());
  }
  std::vector<SeedInput> seeds;
  seeds.reserve(count);
  for (std::uint32_t n = 0; n < count; ++n) {
    std::vector<float> data(pixels);
    const unsigned char* src = images.data() + 16 + n * pixels;
    for (std::size_t i = 0; i < pixels; ++i) {
      data[i] = static_cast<float>(src[i]) / 255.0f;
    }
    seeds.push_back({"idx-" + std::to_string(n),
                     Image(static_cast<int>(rows), static_cast<int>(cols), 1,
                           std::move(data)),
                     ClassLabel{labels[8 + n]}});
  }
  return seeds;
}

void write_idx(const std::filesystem::path& images_path,
               const std::filesystem::path& labels_path,
               std::span<const SeedInput> seeds) {
  if (seeds.empty()) throw DatasetError("write_idx: no seeds");
  const Image& first = seeds.front().image;
  std::ofstream img(images_path, std::ios::binary | std::ios::trunc);
  std::ofstream lab(labels_path, std::ios::binary | std::ios::trunc);
  if (!img || !lab) throw DatasetError("cannot write IDX files");
  put_be32(img, kIdxImagesMagic);
  put_be32(img, static_cast<std::uint32_t>(seeds.size()));
  put_be32(img, static_cast<std::uint32_t>(first.height()));
  put_be32(img, static_cast<std::uint32_t>(first.width()));
  put_be32(lab, kIdxLabelsMagic);
  put_be32(lab, static_cast<std::uint32_t>(seeds.size()));
  for (const SeedInput& s : seeds) {
    if (!s.image.same_shape(first) || s.image.channels() != 1) {
      throw DatasetError("write_idx: images must share one 1-channel shape");
    }
    for (float v : s.image.data()) {
      img.put(static_cast<char>(std::lround(v * 255.0f)));
    }
    lab.put(static_cast<char>(s.label.index));
  }
}

std::vector<SeedInput> ingest_png_dir(const std::filesystem::path& directory,
                                      const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw DatasetError("cannot open label manifest " + manifest.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DatasetError("malformed label manifest: " + std::string(e.what()));
  }
  if (!j.is_object()) {
    throw DatasetError("label manifest must map filename -> label");
  }
  std::vector<std::pair<std::string, int>> entries;
  for (const auto& [name, label] : j.items()) {
    if (!label.is_number_integer() || label.get<int>() < 0) {
      throw DatasetError("label for " + name + " must be a non-negative integer");
    }
    entries.emplace_back(name, label.get<int>());
  }
  std::sort(entries.begin(), entries.end());
  std::vector<SeedInput> seeds;
  for (const auto& [name, label] : entries) {
    seeds.push_back({name, read_png(directory / name), ClassLabel{label}});
  }
  return seeds;
}

std::vector<SeedInput> sample_seeds(std::span<const SeedInput> all,
                                    std::size_t count,
                                    std::uint64_t sampling_seed) {
  if (count > all.size()) {
    throw DatasetError("sample size " + std::to_string(count) +
                       " exceeds dataset size " + std::to_string(all.size()));
  }
  std::vector<std::size_t> order(all.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(sampling_seed);
  // Forward Fisher-Yates: position i is final after step i, so a shorter
  // sample is a prefix of a longer one.
  for (std::size_t i = 0; i + 1 < order.size() && i < count; ++i) {
    const std::size_t remaining = order.size() - i;
    const std::size_t j =
        i + std::min(remaining - 1,
                     static_cast<std::size_t>(uniform01(rng) * remaining));
    std::swap(order[i], order[j]);
  }
  std::vector<SeedInput> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(all[order[i]]);
  return out;
}

}  // namespace swarmtest
