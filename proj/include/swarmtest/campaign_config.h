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

// Campaign configuration file (JSON):
//
// {
//   "dataset": {"format": "idx", "images": "...", "labels": "..."}
//           or {"format": "png_dir", "directory": "...", "labels": "..."},
//   "sample_size": 50,
//   "sampling_seed": 1,
//   "model": {"manifest": "...", "weights": "..."},
//   "quantized_model": {"manifest": "...", "weights": "..."},   // optional
//   "search": { SearchConfig fields, see report.h },
//   "output_dir": "..."
// }
//
// Relative paths are resolved against the directory holding the file. When
// search.divergence_check is set and no quantized_model is given, the model
// is quantized in memory.

#ifndef SWARMTEST_CAMPAIGN_CONFIG_H_
#define SWARMTEST_CAMPAIGN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>

#include "json.hpp"
#include "swarmtest/search.h"

namespace swarmtest {

class ConfigError : public Error {
 public:
  using Error::Error;
};

struct ModelPaths {
  std::filesystem::path manifest;
  std::filesystem::path weights;
};

struct CampaignConfig {
  enum class DatasetFormat { kIdx, kPngDir };
  DatasetFormat format = DatasetFormat::kIdx;
  std::filesystem::path images;     // idx images, or the PNG directory
  std::filesystem::path labels;     // idx labels, or the label manifest
  std::size_t sample_size = 50;
  std::uint64_t sampling_seed = 0;
  ModelPaths model;
  std::optional<ModelPaths> quantized_model;
  SearchConfig search;
  std::filesystem::path output_dir;

  // Snapshot for reports; paths are written as resolved.
  nlohmann::ordered_json to_json() const;
};

// Parses and validates; every referenced input file must exist. Throws
// ConfigError.
CampaignConfig load_campaign_config(const std::filesystem::path& path);
CampaignConfig campaign_config_from_json(const nlohmann::ordered_json& j,
                                         const std::filesystem::path& base_dir);

}  // namespace swarmtest

#endif  // SWARMTEST_CAMPAIGN_CONFIG_H_
