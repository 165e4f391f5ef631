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

// Command-line entry point.
//
//   swarmtest run --config campaign.json [--fail-on-finding] [--export-png]
//                 [--optimizer KIND] [--seed N] [--sample-size N]
//   swarmtest quantize --manifest M --weights W --out-manifest M2
//                      --out-weights W2
//   swarmtest bench-opt --optimizer KIND [--function sphere] [--dim 5]
//                       [--pop 20] [--iters 300] [--seeds 10] [--csv FILE]
//                       [--baseline FILE] [--write-baseline FILE]
//   swarmtest inspect --report report.json [--check]
//   swarmtest ingest --images I --labels L [--format idx|png_dir]
//                    [--sample-size N --sampling-seed S] [--export-dir D]
//
// Exit codes: 0 success, 1 findings (with --fail-on-finding), a failed
// check, or a quantization overflow, 2 usage or configuration error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>

#include "CLI11.hpp"
#include "json.hpp"
#include "swarmtest/benchmark.h"
#include "swarmtest/campaign_config.h"
#include "swarmtest/dataset.h"
#include "swarmtest/model.h"
#include "swarmtest/png_io.h"
#include "swarmtest/report.h"
#include "swarmtest/search.h"

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace swarmtest {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// Raised for problems the operator has to fix (exit code 2).
class UsageError : public Error {
 public:
  using Error::Error;
};

std::vector<SeedInput> load_dataset(CampaignConfig::DatasetFormat format,
                                    const fs::path& images,
                                    const fs::path& labels) {
  if (format == CampaignConfig::DatasetFormat::kIdx) {
    return ingest_idx(images, labels);
  }
  return ingest_png_dir(images, labels);
}

std::string finding_png_name(std::size_t index, const Finding& f) {
  std::string id = f.seed_id;
  for (char& c : id) {
    if (c == '/' || c == '\\' || c == ' ') c = '_';
  }
  char prefix[16];
  std::snprintf(prefix, sizeof(prefix), "%04zu", index);
  return std::string(prefix) + "_" + to_string(f.kind) + "_" + id + "_" +
         to_string(f.path) + ".png";
}

struct RunOptions {
  std::string config;
  bool fail_on_finding = false;
  bool export_png = false;
  std::optional<std::string> optimizer;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> sample_size;
};

int cmd_run(const RunOptions& opts) {
  CampaignConfig cfg;
  std::optional<Model> model;
  std::optional<Model> qmodel;
  std::vector<SeedInput> sample;
  try {
    cfg = load_campaign_config(opts.config);
    if (opts.optimizer) {
      const auto kind = parse_optimizer_kind(*opts.optimizer);
      if (!kind) throw UsageError("unknown optimizer '" + *opts.optimizer + "'");
      cfg.search.optimizer = *kind;
    }
    if (opts.seed) cfg.search.rng_seed = *opts.seed;
    if (opts.sample_size) cfg.sample_size = *opts.sample_size;
    cfg.search.validate();

    model = load_model(cfg.model.manifest, cfg.model.weights);
    if (cfg.quantized_model) {
      qmodel = load_model(cfg.quantized_model->manifest,
                          cfg.quantized_model->weights);
    } else if (cfg.search.divergence_check) {
      qmodel = quantize_model(*model);
    }
    const auto all = load_dataset(cfg.format, cfg.images, cfg.labels);
    sample = sample_seeds(all, cfg.sample_size, cfg.sampling_seed);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const Searcher searcher(*model, qmodel ? &*qmodel : nullptr, cfg.search);
  const TestReport report = searcher.run_campaign(sample);

  fs::create_directories(cfg.output_dir);
  const fs::path report_path = cfg.output_dir / "report.json";
  write_report(report, report_path, cfg.to_json());
  if (opts.export_png && !report.findings.empty()) {
    const fs::path dir = cfg.output_dir / "findings";
    fs::create_directories(dir);
    for (std::size_t i = 0; i < report.findings.size(); ++i) {
      const Finding& f = report.findings[i];
      const Image mutant = searcher.replay_mutant(
          f, sample[static_cast<std::size_t>(f.seed_index)].image);
      write_png(dir / finding_png_name(i, f), mutant);
    }
  }

  std::printf(
      "optimizer %s, seeds %zu (admitted %zu), coverage %.4f -> %.4f, "
      "misclassifications %zu, divergences %zu, %.1fs\n",
      to_string(cfg.search.optimizer).c_str(), report.seed_count,
      report.admitted_count, report.baseline_ratio, report.final_ratio,
      report.misclassification_count, report.divergence_count,
      report.duration_seconds);
  std::printf("report: %s\n", report_path.string().c_str());
  if (opts.fail_on_finding && !report.findings.empty()) return kExitFailure;
  return kExitOk;
}

struct QuantizeOptions {
  std::string manifest, weights, out_manifest, out_weights;
};

int cmd_quantize(const QuantizeOptions& opts) {
  std::optional<Model> model;
  try {
    model = load_model(opts.manifest, opts.weights);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  std::optional<Model> q;
  try {
    q = quantize_model(*model);
  } catch (const ModelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  try {
    save_model(*q, opts.out_manifest, opts.out_weights);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  std::printf("wrote %s and %s (%zu parameters)\n", opts.out_manifest.c_str(),
              opts.out_weights.c_str(), q->parameter_count());
  return kExitOk;
}

struct BenchOptions {
  std::string optimizer;
  std::string function = "sphere";
  int dim = 5;
  int pop = 20;
  int iters = 300;
  int seeds = 10;
  std::string csv;
  std::string baseline;
  std::string write_baseline;
};

// Baseline files hold {"function", "dim", "pop", "iters", "seeds",
// "median_best": {KIND: value, ...}}.
ojson read_baseline(const std::string& path, const BenchOptions& opts) {
  const ojson j = read_json_file(path);
  const bool same = j.value("function", "") == opts.function &&
                    j.value("dim", 0) == opts.dim &&
                    j.value("pop", 0) == opts.pop &&
                    j.value("iters", 0) == opts.iters &&
                    j.value("seeds", 0) == opts.seeds;
  if (!same) {
    throw UsageError("baseline " + path +
                     " was recorded for a different benchmark setup");
  }
  return j;
}

// Regression rule: the median may be at most twice the baseline. Values
// below the absolute floor count as converged, so round-off near zero cannot
// fail the check.
constexpr double kBaselineFloor = 1e-12;

int cmd_bench(const BenchOptions& opts) {
  std::optional<OptimizerKind> kind;
  std::optional<BenchmarkFunction> fn;
  ojson baseline;
  try {
    kind = parse_optimizer_kind(opts.optimizer);
    if (!kind) throw UsageError("unknown optimizer '" + opts.optimizer + "'");
    fn = parse_benchmark_function(opts.function);
    if (!fn) throw UsageError("unknown function '" + opts.function + "'");
    if (opts.dim < 1 || opts.pop < 2 || opts.iters < 0 || opts.seeds < 1) {
      throw UsageError("dim >= 1, pop >= 2, iters >= 0 and seeds >= 1 required");
    }
    if (!opts.baseline.empty()) baseline = read_baseline(opts.baseline, opts);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const BenchmarkResult result =
      run_benchmark(*kind, *fn, opts.dim, opts.pop, opts.iters, opts.seeds);
  if (!opts.csv.empty()) {
    std::ofstream out(opts.csv);
    if (!out) {
      std::cerr << "error: cannot write " << opts.csv << "\n";
      return kExitUsage;
    }
    write_trajectory_csv(result, out);
  } else {
    write_trajectory_csv(result, std::cout);
  }
  const double median = result.median_best();
  std::fprintf(stderr, "%s %s dim %d pop %d iters %d seeds %d: median best %.6g\n",
               to_string(*kind).c_str(), to_string(*fn).c_str(), opts.dim,
               opts.pop, opts.iters, opts.seeds, median);

  if (!opts.write_baseline.empty()) {
    ojson j;
    if (fs::exists(opts.write_baseline)) {
      try {
        j = read_baseline(opts.write_baseline, opts);
      } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
      }
    } else {
      j = {{"function", opts.function}, {"dim", opts.dim}, {"pop", opts.pop},
           {"iters", opts.iters},       {"seeds", opts.seeds},
           {"median_best", ojson::object()}};
    }
    j["median_best"][to_string(*kind)] = median;
    std::ofstream(opts.write_baseline) << j.dump(2) << "\n";
  }

  if (!baseline.is_null()) {
    const ojson& table = baseline.at("median_best");
    if (!table.contains(to_string(*kind))) {
      std::cerr << "error: baseline has no entry for " << to_string(*kind)
                << "\n";
      return kExitUsage;
    }
    const double ref = table.at(to_string(*kind)).get<double>();
    const double limit = std::max(2.0 * ref, kBaselineFloor);
    if (median > limit) {
      std::fprintf(stderr, "regression: median %.6g exceeds 2 x baseline %.6g\n",
                   median, ref);
      return kExitFailure;
    }
    std::fprintf(stderr, "within 2 x baseline %.6g\n", ref);
  }
  return kExitOk;
}

// Re-checks the report-level invariants: counts match the findings list,
// the trajectory never decreases and ends at the final ratio, SSIM bounds
// hold and no two findings share a deduplication key.
std::vector<std::string> check_report(const TestReport& r) {
  std::vector<std::string> problems;
  std::size_t mis = 0, div = 0;
  std::set<std::tuple<std::string, int, int, int>> keys;
  for (const Finding& f : r.findings) {
    (f.kind == FindingKind::kMisclassification ? mis : div)++;
    if (f.ssim < r.config.ssim_threshold) {
      problems.push_back("finding below the SSIM threshold for " + f.seed_id);
    }
    if (f.model_label == f.reference_label) {
      problems.push_back("finding without label disagreement for " +
                         f.seed_id);
    }
    if (!keys.insert({f.seed_id, static_cast<int>(f.kind),
                      static_cast<int>(f.path), f.model_label.index})
             .second) {
      problems.push_back("duplicate finding for " + f.seed_id);
    }
  }
  if (mis != r.misclassification_count || div != r.divergence_count) {
    problems.push_back("finding counts do not match the findings list");
  }
  for (std::size_t i = 1; i < r.trajectory.size(); ++i) {
    if (r.trajectory[i].ratio < r.trajectory[i - 1].ratio) {
      problems.push_back("coverage trajectory decreases at entry " +
                         std::to_string(i));
    }
  }
  if (!r.trajectory.empty() && r.trajectory.back().ratio != r.final_ratio) {
    problems.push_back("trajectory does not end at the final ratio");
  }
  return problems;
}

int cmd_inspect(const std::string& path, bool check) {
  TestReport r;
  try {
    r = report_from_json(read_json_file(path));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  std::printf("optimizer:        %s (rng_seed %llu)\n",
              to_string(r.config.optimizer).c_str(),
              static_cast<unsigned long long>(r.config.rng_seed));
  std::printf("seeds:            %zu (admitted %zu)\n", r.seed_count,
              r.admitted_count);
  std::printf("neurons:          %zu covered of %zu\n", r.covered_count,
              r.neuron_total);
  std::printf("coverage:         %.4f -> %.4f\n", r.baseline_ratio,
              r.final_ratio);
  std::printf("evaluations:      %zu\n", r.evaluations);
  std::printf("misclassification findings: %zu\n", r.misclassification_count);
  std::printf("divergence findings:        %zu\n", r.divergence_count);
  std::map<std::string, std::size_t> per_path;
  for (const Finding& f : r.findings) ++per_path[to_string(f.path)];
  for (const auto& [name, n] : per_path) {
    std::printf("  %-12s %zu\n", name.c_str(), n);
  }
  if (!check) return kExitOk;
  const auto problems = check_report(r);
  for (const std::string& p : problems) std::printf("check failed: %s\n", p.c_str());
  if (problems.empty()) std::printf("checks passed\n");
  return problems.empty() ? kExitOk : kExitFailure;
}

struct IngestOptions {
  std::string images, labels;
  std::string format = "idx";
  std::optional<std::size_t> sample_size;
  std::uint64_t sampling_seed = 0;
  std::string export_dir;
};

int cmd_ingest(const IngestOptions& opts) {
  try {
    CampaignConfig::DatasetFormat format;
    if (opts.format == "idx") {
      format = CampaignConfig::DatasetFormat::kIdx;
    } else if (opts.format == "png_dir") {
      format = CampaignConfig::DatasetFormat::kPngDir;
    } else {
      throw UsageError("unknown dataset format '" + opts.format + "'");
    }
    const auto all = load_dataset(format, opts.images, opts.labels);
    std::vector<SeedInput> seeds =
        opts.sample_size ? sample_seeds(all, *opts.sample_size, opts.sampling_seed)
                         : all;
    std::map<int, std::size_t> per_label;
    for (const SeedInput& s : seeds) ++per_label[s.label.index];
    std::printf("%zu inputs of shape %s\n", seeds.size(),
                seeds.empty() ? "-" : seeds.front().image.shape_string().c_str());
    for (const auto& [label, n] : per_label) {
      std::printf("  label %d: %zu\n", label, n);
    }
    if (!opts.export_dir.empty()) {
      fs::create_directories(opts.export_dir);
      ojson manifest = ojson::object();
      for (const SeedInput& s : seeds) {
        const std::string name = s.id + ".png";
        write_png(fs::path(opts.export_dir) / name, s.image);
        manifest[name] = s.label.index;
      }
      std::ofstream(fs::path(opts.export_dir) / "labels.json")
          << manifest.dump(2) << "\n";
      std::printf("exported to %s\n", opts.export_dir.c_str());
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace
}  // namespace swarmtest

int main(int argc, char** argv) {
  using namespace swarmtest;
  CLI::App app{"Coverage-guided test generation for image classifiers"};
  app.require_subcommand(1);

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Run a test-generation campaign");
  run_cmd->add_option("--config", run.config, "Campaign config (JSON)")
      ->required();
  run_cmd->add_flag("--fail-on-finding", run.fail_on_finding,
                    "Exit 1 when the report contains findings");
  run_cmd->add_flag("--export-png", run.export_png,
                    "Write finding mutants as PNG files");
  run_cmd->add_option("--optimizer", run.optimizer, "Override the optimizer");
  run_cmd->add_option("--seed", run.seed, "Override the search RNG seed");
  run_cmd->add_option("--sample-size", run.sample_size,
                      "Override the number of seed inputs");

  QuantizeOptions quant;
  auto* quant_cmd =
      app.add_subcommand("quantize", "Round-trip all parameters through binary16");
  quant_cmd->add_option("--manifest", quant.manifest)->required();
  quant_cmd->add_option("--weights", quant.weights)->required();
  quant_cmd->add_option("--out-manifest", quant.out_manifest)->required();
  quant_cmd->add_option("--out-weights", quant.out_weights)->required();

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand(
      "bench-opt", "Benchmark an optimizer on a minimization test function");
  bench_cmd->add_option("--optimizer", bench.optimizer)->required();
  bench_cmd->add_option("--function", bench.function,
                        "sphere, rastrigin or rosenbrock");
  bench_cmd->add_option("--dim", bench.dim);
  bench_cmd->add_option("--pop", bench.pop);
  bench_cmd->add_option("--iters", bench.iters);
  bench_cmd->add_option("--seeds", bench.seeds);
  bench_cmd->add_option("--csv", bench.csv, "Trajectory CSV (default stdout)");
  bench_cmd->add_option("--baseline", bench.baseline,
                        "Fail if the median best exceeds 2x this baseline");
  bench_cmd->add_option("--write-baseline", bench.write_baseline,
                        "Record the median best into a baseline file");

  std::string report_path;
  bool check = false;
  auto* inspect_cmd = app.add_subcommand("inspect", "Summarize a report");
  inspect_cmd->add_option("--report", report_path)->required();
  inspect_cmd->add_flag("--check", check, "Exit 1 if report invariants fail");

  IngestOptions ingest;
  auto* ingest_cmd =
      app.add_subcommand("ingest", "Validate a dataset and optionally export it");
  ingest_cmd->add_option("--images", ingest.images,
                         "IDX images file or PNG directory")
      ->required();
  ingest_cmd->add_option("--labels", ingest.labels,
                         "IDX labels file or label manifest")
      ->required();
  ingest_cmd->add_option("--format", ingest.format, "idx or png_dir");
  ingest_cmd->add_option("--sample-size", ingest.sample_size);
  ingest_cmd->add_option("--sampling-seed", ingest.sampling_seed);
  ingest_cmd->add_option("--export-dir", ingest.export_dir,
                         "Write PNGs plus labels.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*quant_cmd) return cmd_quantize(quant);
    if (*bench_cmd) return cmd_bench(bench);
    if (*inspect_cmd) return cmd_inspect(report_path, check);
    if (*ingest_cmd) return cmd_ingest(ingest);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
