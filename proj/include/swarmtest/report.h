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

// JSON serialization of search configurations, findings and reports.
//
// Report layout (keys in this order):
//   config       SearchConfig, including bounds and optimizer constants
//   campaign     optional caller-supplied object (dataset, model paths, ...)
//   summary      seed counts, neuron totals, baseline/final ratios, counts
//   trajectory   [{seed_index, generation, ratio}], baseline entry first
//   findings     [{kind, seed_id, seed_index, path, model_label,
//                  reference_label, ssim, noise_seed, generation, candidate,
//                  transform: {name: value, ...}}]
//   timing       {duration_seconds}; omitted when include_timing is false

#ifndef SWARMTEST_REPORT_H_
#define SWARMTEST_REPORT_H_

#include <filesystem>
#include <string>

#include "json.hpp"
#include "swarmtest/search.h"

namespace swarmtest {

nlohmann::ordered_json config_to_json(const SearchConfig& cfg);
// Missing keys keep their defaults. Throws Error on bad values.
SearchConfig config_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json finding_to_json(const Finding& f);
Finding finding_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json report_to_json(
    const TestReport& report, bool include_timing = true,
    const nlohmann::ordered_json& campaign = nullptr);
TestReport report_from_json(const nlohmann::ordered_json& j);

void write_report(const TestReport& report, const std::filesystem::path& path,
                  const nlohmann::ordered_json& campaign = nullptr);
nlohmann::ordered_json read_json_file(const std::filesystem::path& path);

}  // namespace swarmtest

#endif  // SWARMTEST_REPORT_H_
