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

// Coverage-guided search over transformation vectors.
//
// For every seed input a swarm evolves TransformVectors. Each candidate is
// expanded into five mutants, filtered by SSIM against the seed, and scored
// by alpha * NLNC + beta * NGNC (best surviving mutant). Mutants that change
// the model's prediction (or make the model and its binary16 twin disagree)
// are stored as findings. Coverage is committed at generation boundaries, so
// every candidate of a generation sees the same global snapshot.

#ifndef SWARMTEST_SEARCH_H_
#define SWARMTEST_SEARCH_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "swarmtest/coverage.h"
#include "swarmtest/model.h"
#include "swarmtest/optimizer.h"
#include "swarmtest/transform.h"

namespace swarmtest {

struct SearchConfig {
  double alpha = 0.1;
  double beta = 1.0;
  int pop_size = 10;
  int max_iterations = 10;
  double ssim_threshold = 0.5;
  double activation_threshold = kDefaultActivationThreshold;
  OptimizerKind optimizer = OptimizerKind::kCS;
  std::uint64_t rng_seed = 0;
  bool divergence_check = false;
  // Fresh swarm per seed input; false continues one swarm across seeds.
  bool reinit_per_seed = true;
  int ssim_window = 7;
  Bounds bounds = Bounds::defaults();
  OptimizerParams optimizer_params;

  // Throws Error on out-of-range values.
  void validate() const;
};

struct SeedInput {
  std::string id;
  Image image;
  ClassLabel label;
};

enum class FindingKind { kMisclassification, kDivergence };
std::string to_string(FindingKind kind);
std::optional<FindingKind> parse_finding_kind(const std::string& name);

struct Finding {
  FindingKind kind = FindingKind::kMisclassification;
  std::string seed_id;
  int seed_index = 0;
  TransformVector transform;
  MutantPath path = MutantPath::kPixelOnly;
  // Label predicted by the model under test.
  ClassLabel model_label;
  // Ground truth (misclassification) or the quantized model's label
  // (divergence).
  ClassLabel reference_label;
  double ssim = 0.0;
  // Seed of the RNG substream that drove the noise stage; replaying the
  // transform with it reproduces the mutant exactly.
  std::uint64_t noise_seed = 0;
  int generation = 0;
  int candidate = 0;
};

struct CandidateResult {
  double fitness = 0.0;
  FitnessBreakdown best;  // breakdown of the highest-scoring survivor
  std::vector<Finding> findings;
  NeuronSet covered;  // union over survivors
  int survivors = 0;
};

struct TrajectoryPoint {
  int seed_index = -1;  // -1 for the baseline entry
  int generation = 0;
  double ratio = 0.0;
};

struct TestReport {
  SearchConfig config;
  std::size_t seed_count = 0;
  std::size_t admitted_count = 0;
  std::size_t neuron_total = 0;
  std::size_t covered_count = 0;
  double baseline_ratio = 0.0;
  double final_ratio = 0.0;
  std::vector<TrajectoryPoint> trajectory;
  std::vector<Finding> findings;
  std::size_t misclassification_count = 0;
  std::size_t divergence_count = 0;
  std::size_t evaluations = 0;
  double duration_seconds = 0.0;
};

// Labels of model and qmodel when they disagree on `mutant`.
struct Divergence {
  ClassLabel model_label;
  ClassLabel quantized_label;
};
std::optional<Divergence> detect_divergence(const Model& model,
                                            const Model& qmodel,
                                            const Image& mutant);

class Searcher {
 public:
  // `qmodel` may be null; it is required when cfg.divergence_check is set.
  // Both models must outlive the Searcher.
  Searcher(const Model& model, const Model* qmodel, SearchConfig cfg);

  const SearchConfig& config() const { return cfg_; }
  const TransformEngine& engine() const { return engine_; }

  // Seed state computed once per campaign.
  struct PreparedSeed {
    const SeedInput* input = nullptr;
    int index = 0;
    ClassLabel predicted;
    bool admitted = false;  // model classifies the unmodified seed correctly
    NeuronSet activated;
  };
  PreparedSeed prepare(const SeedInput& seed, int index) const;

  // Expands `v` with the noise substream `noise_seed` and scores it against
  // the read-only snapshot `global`.
  CandidateResult evaluate_candidate(const TransformVector& v,
                                     const PreparedSeed& seed,
                                     const GlobalCoverageMap& global,
                                     std::uint64_t noise_seed,
                                     int generation = 0,
                                     int candidate = 0) const;

  struct SeedRun {
    std::vector<Finding> findings;
    std::vector<double> trajectory;  // coverage ratio after each generation
    std::size_t evaluations = 0;
  };
  // Evolves transformations for one seed, committing coverage into `global`
  // after each generation. Findings are deduplicated within the seed.
  SeedRun run_seed(const PreparedSeed& seed, GlobalCoverageMap& global) const;

  // Commits every seed's own coverage (the baseline), then searches each
  // admissible seed in order. Throws Error for an empty seed list.
  TestReport run_campaign(std::span<const SeedInput> seeds) const;

  // Regenerates the mutant a finding points at.
  Image replay_mutant(const Finding& finding, const Image& seed_image) const;

 private:
  // Drives generations [0, max_iterations) of one seed with `opt`.
  SeedRun evolve(Optimizer& opt, const PreparedSeed& seed,
                 GlobalCoverageMap& global) const;
  std::unique_ptr<Optimizer> make_optimizer(std::uint64_t seed,
                                            int horizon) const;

  const Model& model_;
  const Model* qmodel_;
  SearchConfig cfg_;
  TransformEngine engine_;
};

// Search box matching `bounds`.
SearchBox to_search_box(const Bounds& bounds);

}  // namespace swarmtest

#endif  // SWARMTEST_SEARCH_H_
