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

#include "swarmtest/report.h"

#include <fstream>

namespace swarmtest {
namespace {

using ojson = nlohmann::ordered_json;

ojson array_json(const std::array<double, kTransformDims>& a) {
  ojson j = ojson::array();
  for (double v : a) j.push_back(v);
  return j;
}

std::array<double, kTransformDims> array_from(const ojson& j, const char* what) {
  if (!j.is_array() || j.size() != kTransformDims) {
    throw Error(std::string(what) + " must be an array of " +
                std::to_string(kTransformDims) + " numbers");
  }
  std::array<double, kTransformDims> out{};
  for (std::size_t i = 0; i < kTransformDims; ++i) out[i] = j[i].get<double>();
  return out;
}

ojson params_json(const OptimizerParams& p) {
  return {
      {"pso_inertia_start", p.pso_inertia_start},
      {"pso_inertia_end", p.pso_inertia_end},
      {"pso_c1", p.pso_c1},
      {"pso_c2", p.pso_c2},
      {"pso_velocity_clamp", p.pso_velocity_clamp},
      {"cs_discovery_rate", p.cs_discovery_rate},
      {"cs_levy_exponent", p.cs_levy_exponent},
      {"cs_step_scale", p.cs_step_scale},
      {"bat_loudness0", p.bat_loudness0},
      {"bat_pulse_rate0", p.bat_pulse_rate0},
      {"bat_freq_min", p.bat_freq_min},
      {"bat_freq_max", p.bat_freq_max},
      {"bat_loudness_decay", p.bat_loudness_decay},
      {"bat_pulse_gamma", p.bat_pulse_gamma},
      {"bat_local_walk", p.bat_local_walk},
      {"gwo_a_start", p.gwo_a_start},
      {"gwo_a_end", p.gwo_a_end},
      {"mfo_spiral_b", p.mfo_spiral_b},
      {"woa_a_start", p.woa_a_start},
      {"woa_a_end", p.woa_a_end},
      {"woa_spiral_b", p.woa_spiral_b},
      {"mvo_wep_min", p.mvo_wep_min},
      {"mvo_wep_max", p.mvo_wep_max},
      {"mvo_tdr_exponent", p.mvo_tdr_exponent},
  };
}

OptimizerParams params_from(const ojson& j) {
  OptimizerParams p;
  if (!j.is_object()) return p;
  auto get = [&](const char* key, double& field) {
    if (j.contains(key)) field = j.at(key).get<double>();
  };
  get("pso_inertia_start", p.pso_inertia_start);
  get("pso_inertia_end", p.pso_inertia_end);
  get("pso_c1", p.pso_c1);
  get("pso_c2", p.pso_c2);
  get("pso_velocity_clamp", p.pso_velocity_clamp);
  get("cs_discovery_rate", p.cs_discovery_rate);
  get("cs_levy_exponent", p.cs_levy_exponent);
  get("cs_step_scale", p.cs_step_scale);
  get("bat_loudness0", p.bat_loudness0);
  get("bat_pulse_rate0", p.bat_pulse_rate0);
  get("bat_freq_min", p.bat_freq_min);
  get("bat_freq_max", p.bat_freq_max);
  get("bat_loudness_decay", p.bat_loudness_decay);
  get("bat_pulse_gamma", p.bat_pulse_gamma);
  get("bat_local_walk", p.bat_local_walk);
  get("gwo_a_start", p.gwo_a_start);
  get("gwo_a_end", p.gwo_a_end);
  get("mfo_spiral_b", p.mfo_spiral_b);
  get("woa_a_start", p.woa_a_start);
  get("woa_a_end", p.woa_a_end);
  get("woa_spiral_b", p.woa_spiral_b);
  get("mvo_wep_min", p.mvo_wep_min);
  get("mvo_wep_max", p.mvo_wep_max);
  get("mvo_tdr_exponent", p.mvo_tdr_exponent);
  return p;
}

}  // namespace

ojson config_to_json(const SearchConfig& cfg) {
  ojson j;
  j["alpha"] = cfg.alpha;
  j["beta"] = cfg.beta;
  j["pop_size"] = cfg.pop_size;
  j["max_iterations"] = cfg.max_iterations;
  j["ssim_threshold"] = cfg.ssim_threshold;
  j["activation_threshold"] = cfg.activation_threshold;
  j["optimizer"] = to_string(cfg.optimizer);
  j["rng_seed"] = cfg.rng_seed;
  j["divergence_check"] = cfg.divergence_check;
  j["reinit_per_seed"] = cfg.reinit_per_seed;
  j["ssim_window"] = cfg.ssim_window;
  j["bounds"] = {{"low", array_json(cfg.bounds.low)},
                 {"high", array_json(cfg.bounds.high)}};
  j["optimizer_params"] = params_json(cfg.optimizer_params);
  return j;
}

SearchConfig config_from_json(const ojson& j) {
  if (!j.is_object()) throw Error("search config must be a JSON object");
  SearchConfig cfg;
  try {
    cfg.alpha = j.value("alpha", cfg.alpha);
    cfg.beta = j.value("beta", cfg.beta);
    cfg.pop_size = j.value("pop_size", cfg.pop_size);
    cfg.max_iterations = j.value("max_iterations", cfg.max_iterations);
    cfg.ssim_threshold = j.value("ssim_threshold", cfg.ssim_threshold);
    cfg.activation_threshold =
        j.value("activation_threshold", cfg.activation_threshold);
    if (j.contains("optimizer")) {
      const std::string name = j.at("optimizer").get<std::string>();
      const auto kind = parse_optimizer_kind(name);
      if (!kind) throw Error("unknown optimizer '" + name + "'");
      cfg.optimizer = *kind;
    }
    cfg.rng_seed = j.value("rng_seed", cfg.rng_seed);
    cfg.divergence_check = j.value("divergence_check", cfg.divergence_check);
    cfg.reinit_per_seed = j.value("reinit_per_seed", cfg.reinit_per_seed);
    cfg.ssim_window = j.value("ssim_window", cfg.ssim_window);
    if (j.contains("bounds")) {
      const ojson& b = j.at("bounds");
      cfg.bounds.low = array_from(b.at("low"), "bounds.low");
      cfg.bounds.high = array_from(b.at("high"), "bounds.high");
    }
    if (j.contains("optimizer_params")) {
      cfg.optimizer_params = params_from(j.at("optimizer_params"));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("bad search config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

ojson finding_to_json(const Finding& f) {
  ojson j;
  j["kind"] = to_string(f.kind);
  j["seed_id"] = f.seed_id;
  j["seed_index"] = f.seed_index;
  j["path"] = to_string(f.path);
  j["model_label"] = f.model_label.index;
  j["reference_label"] = f.reference_label.index;
  j["ssim"] = f.ssim;
  j["noise_seed"] = f.noise_seed;
  j["generation"] = f.generation;
  j["candidate"] = f.candidate;
  ojson t;
  for (std::size_t i = 0; i < kTransformDims; ++i) {
    t[param_name(static_cast<TransformParam>(i))] = f.transform.values[i];
  }
  j["transform"] = std::move(t);
  return j;
}

Finding finding_from_json(const ojson& j) {
  try {
    Finding f;
    const auto kind = parse_finding_kind(j.at("kind").get<std::string>());
    if (!kind) throw Error("unknown finding kind " + j.at("kind").dump());
    f.kind = *kind;
    f.seed_id = j.at("seed_id").get<std::string>();
    f.seed_index = j.at("seed_index").get<int>();
    const auto path = parse_mutant_path(j.at("path").get<std::string>());
    if (!path) throw Error("unknown mutant path " + j.at("path").dump());
    f.path = *path;
    f.model_label.index = j.at("model_label").get<int>();
    f.reference_label.index = j.at("reference_label").get<int>();
    f.ssim = j.at("ssim").get<double>();
    f.noise_seed = j.at("noise_seed").get<std::uint64_t>();
    f.generation = j.value("generation", 0);
    f.candidate = j.value("candidate", 0);
    const ojson& t = j.at("transform");
    for (std::size_t i = 0; i < kTransformDims; ++i) {
      f.transform.values[i] =
          t.at(param_name(static_cast<TransformParam>(i))).get<double>();
    }
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("bad finding: ") + e.what());
  }
}

ojson report_to_json(const TestReport& report, bool include_timing,
                     const ojson& campaign) {
  ojson j;
  j["config"] = config_to_json(report.config);
  if (!campaign.is_null()) j["campaign"] = campaign;
  j["summary"] = {
      {"seed_count", report.seed_count},
      {"admitted_count", report.admitted_count},
      {"neuron_total", report.neuron_total},
      {"covered_count", report.covered_count},
      {"baseline_ratio", report.baseline_ratio},
      {"final_ratio", report.final_ratio},
      {"evaluations", report.evaluations},
      {"misclassification_count", report.misclassification_count},
      {"divergence_count", report.divergence_count},
  };
  ojson traj = ojson::array();
  for (const auto& p : report.trajectory) {
    traj.push_back({{"seed_index", p.seed_index},
                    {"generation", p.generation},
                    {"ratio", p.ratio}});
  }
  j["trajectory"] = std::move(traj);
  ojson findings = ojson::array();
  for (const auto& f : report.findings) findings.push_back(finding_to_json(f));
  j["findings"] = std::move(findings);
  if (include_timing) {
    j["timing"] = {{"duration_seconds", report.duration_seconds}};
  }
  return j;
}

TestReport report_from_json(const ojson& j) {
  try {
    TestReport r;
    r.config = config_from_json(j.at("config"));
    const ojson& s = j.at("summary");
    r.seed_count = s.at("seed_count").get<std::size_t>();
    r.admitted_count = s.at("admitted_count").get<std::size_t>();
    r.neuron_total = s.at("neuron_total").get<std::size_t>();
    r.covered_count = s.at("covered_count").get<std::size_t>();
    r.baseline_ratio = s.at("baseline_ratio").get<double>();
    r.final_ratio = s.at("final_ratio").get<double>();
    r.evaluations = s.at("evaluations").get<std::size_t>();
    r.misclassification_count =
        s.at("misclassification_count").get<std::size_t>();
    r.divergence_count = s.at("divergence_count").get<std::size_t>();
    for (const auto& p : j.at("trajectory")) {
      r.trajectory.push_back({p.at("seed_index").get<int>(),
                              p.at("generation").get<int>(),
                              p.at("ratio").get<double>()});
    }
    for (const auto& f : j.at("findings")) {
      r.findings.push_back(finding_from_json(f));
    }
    if (j.contains("timing")) {
      r.duration_seconds = j["timing"].value("duration_seconds", 0.0);
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("bad report: ") + e.what());
  }
}

void write_report(const TestReport& report, const std::filesystem::path& path,
                  const ojson& campaign) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot write report " + path.string());
  out << report_to_json(report, true, campaign).dump(2) << '\n';
}

ojson read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return ojson::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed JSON in " + path.string() + ": " + e.what());
  }
}

}  // namespace swarmtest
