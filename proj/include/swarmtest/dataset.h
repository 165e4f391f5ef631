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

// Seed-input ingestion: MNIST-style IDX pairs and PNG directories with a
// label manifest, plus reproducible sampling.

#ifndef SWARMTEST_DATASET_H_
#define SWARMTEST_DATASET_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "swarmtest/search.h"

namespace swarmtest {

class DatasetError : public Error {
 public:
  using Error::Error;
};

inline constexpr std::uint32_t kIdxImagesMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelsMagic = 0x00000801;

// Reads an IDX image file (ubyte, rank 3: count x rows x cols) and its label
// file (ubyte, rank 1). Bytes map to value / 255. Seed ids are "idx-<n>".
// Throws DatasetError on bad magic, count mismatch or truncation.
std::vector<SeedInput> ingest_idx(const std::filesystem::path& images_path,
                                  const std::filesystem::path& labels_path);

// Writes the IDX pair for single-channel images whose values are multiples
// of 1/255.
void write_idx(const std::filesystem::path& images_path,
               const std::filesystem::path& labels_path,
               std::span<const SeedInput> seeds);

// Every PNG listed in the JSON manifest {"file.png": label, ...}, in sorted
// filename order. Seed ids are the filenames.
std::vector<SeedInput> ingest_png_dir(const std::filesystem::path& directory,
                                      const std::filesystem::path& manifest);

// First `count` seeds of a seeded Fisher-Yates permutation. Samples with the
// same seed are prefixes of each other. Throws DatasetError if count exceeds
// the dataset size.
std::vector<SeedInput> sample_seeds(std::span<const SeedInput> all,
                                    std::size_t count,
                                    std::uint64_t sampling_seed);

}  // namespace swarmtest

#endif  // SWARMTEST_DATASET_H_
