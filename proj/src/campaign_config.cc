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

#include "swarmtest/campaign_config.h"

#include "swarmtest/report.h"

namespace swarmtest {
namespace {

using ojson = nlohmann::ordered_json;

std::filesystem::path resolve(const std::filesystem::path& base,
                              const ojson& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string()) {
    throw ConfigError(std::string("missing path field '") + key + "'");
  }
  std::filesystem::path p = j.at(key).get<std::string>();
  return (p.is_absolute() ? p : base / p).lexically_normal();
}

void require_file(const std::filesystem::path& p, const char* what) {
  if (!std::filesystem::exists(p)) {
    throw ConfigError(std::string(what) + " not found: " + p.string());
  }
}

ModelPaths model_paths(const ojson& j, const std::filesystem::path& base) {
  if (!j.is_object()) throw ConfigError("model entry must be an object");
  ModelPaths m{resolve(base, j, "manifest"), resolve(base, j, "weights")};
  require_file(m.manifest, "model manifest");
  require_file(m.weights, "model weights");
  return m;
}

}  // namespace

ojson CampaignConfig::to_json() const {
  ojson j;
  if (format == DatasetFormat::kIdx) {
    j["dataset"] = {{"format", "idx"},
                    {"images", images.string()},
                    {"labels", labels.string()}};
  } else {
    j["dataset"] = {{"format", "png_dir"},
                    {"directory", images.string()},
                    {"labels", labels.string()}};
  }
  j["sample_size"] = sample_size;
  j["sampling_seed"] = sampling_seed;
  j["model"] = {{"manifest", model.manifest.string()},
                {"weights", model.weights.string()}};
  if (quantized_model) {
    j["quantized_model"] = {{"manifest", quantized_model->manifest.string()},
                            {"weights", quantized_model->weights.string()}};
  }
  j["search"] = config_to_json(search);
  j["output_dir"] = output_dir.string();
  return j;
}

CampaignConfig campaign_config_from_json(const ojson& j,
                                         const std::filesystem::path& base) {
  if (!j.is_object()) throw ConfigError("campaign config must be an object");
  CampaignConfig c;
  try {
    const ojson& ds = j.at("dataset");
    const std::string format = ds.value("format", std::string("idx"));
    if (format == "idx") {
      c.format = CampaignConfig::DatasetFormat::kIdx;
      c.images = resolve(base, ds, "images");
    } else if (format == "png_dir") {
      c.format = CampaignConfig::DatasetFormat::kPngDir;
      c.images = resolve(base, ds, "directory");
    } else {
      throw ConfigError("unknown dataset format '" + format + "'");
    }
    c.labels = resolve(base, ds, "labels");
    require_file(c.images, "dataset");
    require_file(c.labels, "dataset labels");

    c.sample_size = j.value("sample_size", c.sample_size);
    c.sampling_seed = j.value("sampling_seed", c.sampling_seed);
    if (c.sample_size == 0) throw ConfigError("sample_size must be positive");
    c.model = model_paths(j.at("model"), base);
    if (j.contains("quantized_model")) {
      c.quantized_model = model_paths(j.at("quantized_model"), base);
    }
    c.search = config_from_json(j.value("search", ojson::object()));
    c.output_dir = resolve(base, j, "output_dir");
  } catch (const ConfigError&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed campaign config: ") + e.what());
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return c;
}

CampaignConfig load_campaign_config(const std::filesystem::path& path) {
  ojson j;
  try {
    j = read_json_file(path);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return campaign_config_from_json(j, path.parent_path());
}

}  // namespace swarmtest
