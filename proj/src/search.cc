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

#include "swarmtest/search.h"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "swarmtest/random.h"

namespace swarmtest {
namespace {

TransformOptions transform_options(const SearchConfig& cfg) {
  TransformOptions opts;
  opts.ssim.window = cfg.ssim_window;
  return opts;
}

using DedupKey = std::tuple<std::string, int, int, int>;

DedupKey dedup_key(const Finding& f) {
  return {f.seed_id, static_cast<int>(f.kind), static_cast<int>(f.path),
          f.model_label.index};
}

// Keys tying noise substreams and optimizer streams to their position in the
// campaign.
constexpr std::uint64_t kOptimizerStream = 0x6f7074;  // "opt"

}  // namespace

void SearchConfig::validate() const {
  if (!(alpha >= 0.0) || !(beta >= 0.0)) {
    throw Error("alpha and beta must be non-negative");
  }
  if (pop_size < 2) throw Error("pop_size must be at least 2");
  if (max_iterations < 0) throw Error("max_iterations must be >= 0");
  if (!(ssim_threshold >= 0.0 && ssim_threshold <= 1.0)) {
    throw Error("ssim_threshold must lie in [0, 1]");
  }
  if (!(activation_threshold >= 0.0 && activation_threshold <= 1.0)) {
    throw Error("activation_threshold must lie in [0, 1]");
  }
  if (ssim_window < 1) throw Error("ssim_window must be positive");
  bounds.validate();
}

std::string to_string(FindingKind kind) {
  return kind == FindingKind::kMisclassification ? "misclassification"
                                                 : "divergence";
}

std::optional<FindingKind> parse_finding_kind(const std::string& name) {
  if (name == "misclassification") return FindingKind::kMisclassification;
  if (name == "divergence") return FindingKind::kDivergence;
  return std::nullopt;
}

std::optional<Divergence> detect_divergence(const Model& model,
                                            const Model& qmodel,
                                            const Image& mutant) {
  const ClassLabel a = model.predict(mutant);
  const ClassLabel b = qmodel.predict(mutant);
  if (a == b) return std::nullopt;
  return Divergence{a, b};
}

SearchBox to_search_box(const Bounds& bounds) {
  return {std::vector<double>(bounds.low.begin(), bounds.low.end()),
          std::vector<double>(bounds.high.begin(), bounds.high.end())};
}

Searcher::Searcher(const Model& model, const Model* qmodel, SearchConfig cfg)
    : model_(model),
      qmodel_(qmodel),
      cfg_(std::move(cfg)),
      engine_(cfg_.bounds, transform_options(cfg_)) {
  cfg_.validate();
  if (cfg_.divergence_check && qmodel_ == nullptr) {
    throw Error("divergence_check requires a quantized model");
  }
  if (qmodel_ && (qmodel_->input_shape() != model_.input_shape() ||
                  qmodel_->num_classes() != model_.num_classes())) {
    throw Error("quantized model does not match the model under test");
  }
}

Searcher::PreparedSeed Searcher::prepare(const SeedInput& seed,
                                         int index) const {
  const ForwardResult fwd = model_.forward(seed.image);
  PreparedSeed p;
  p.input = &seed;
  p.index = index;
  p.predicted = argmax_label(fwd.logits);
  p.admitted = p.predicted == seed.label;
  p.activated = activated_set(fwd.profile, cfg_.activation_threshold);
  return p;
}

CandidateResult Searcher::evaluate_candidate(const TransformVector& v,
                                             const PreparedSeed& seed,
                                             const GlobalCoverageMap& global,
                                             std::uint64_t noise_seed,
                                             int generation,
                                             int candidate) const {
  CandidateResult result;
  result.covered = NeuronSet(global.total());

  Rng rng(noise_seed);
  const Image& source = seed.input->image;
  const MutantBatch batch = engine_.expand(source, v, rng);
  const auto survivors =
      engine_.filter_valid(source, batch, cfg_.ssim_threshold);
  result.survivors = static_cast<int>(survivors.size());

  bool first = true;
  for (const ValidMutant& m : survivors) {
    const ForwardResult fwd = model_.forward(m.image);
    const NeuronSet active = activated_set(fwd.profile, cfg_.activation_threshold);
    const FitnessBreakdown b =
        make_breakdown(nlnc(active, seed.activated), ngnc(active, global),
                       cfg_.alpha, cfg_.beta);
    if (first || b.value > result.best.value) result.best = b;
    first = false;
    result.covered.merge(active);

    Finding base;
    base.seed_id = seed.input->id;
    base.seed_index = seed.index;
    base.transform = v;
    base.path = m.path;
    base.ssim = m.ssim;
    base.noise_seed = noise_seed;
    base.generation = generation;
    base.candidate = candidate;

    const ClassLabel label = argmax_label(fwd.logits);
    if (seed.admitted && label != seed.input->label) {
      Finding f = base;
      f.kind = FindingKind::kMisclassification;
      f.model_label = label;
      f.reference_label = seed.input->label;
      result.findings.push_back(std::move(f));
    }
    if (cfg_.divergence_check && qmodel_ != nullptr) {
      const ClassLabel qlabel = qmodel_->predict(m.image);
      if (qlabel != label) {
        Finding f = base;
        f.kind = FindingKind::kDivergence;
        f.model_label = label;
        f.reference_label = qlabel;
        result.findings.push_back(std::move(f));
      }
    }
  }
  result.fitness = result.best.value;
  return result;
}

std::unique_ptr<Optimizer> Searcher::make_optimizer(std::uint64_t seed,
                                                    int horizon) const {
  OptimizerOptions opts;
  opts.pop_size = cfg_.pop_size;
  opts.horizon = std::max(1, horizon);
  opts.seed = seed;
  opts.params = cfg_.optimizer_params;
  return Optimizer::create(cfg_.optimizer, to_search_box(cfg_.bounds), opts);
}

Searcher::SeedRun Searcher::evolve(Optimizer& opt, const PreparedSeed& seed,
                                   GlobalCoverageMap& global) const {
  SeedRun run;
  std::set<DedupKey> seen;
  std::vector<double> fitness(static_cast<std::size_t>(cfg_.pop_size));
  for (int gen = 0; gen < cfg_.max_iterations; ++gen) {
    const std::vector<Position> positions = opt.ask();
    std::vector<NeuronSet> covered;
    covered.reserve(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i) {
      const std::uint64_t noise_seed = derive_seed(
          cfg_.rng_seed, {static_cast<std::uint64_t>(seed.index),
                          static_cast<std::uint64_t>(gen), i});
      CandidateResult r = evaluate_candidate(
          TransformVector::from(positions[i]), seed, global, noise_seed, gen,
          static_cast<int>(i));
      // Candidates whose mutants were all rejected are told fitness 0.
      fitness[i] = r.fitness;
      for (Finding& f : r.findings) {
        if (seen.insert(dedup_key(f)).second) {
          run.findings.push_back(std::move(f));
        }
      }
      covered.push_back(std::move(r.covered));
      ++run.evaluations;
    }
    opt.tell(fitness);
    for (const NeuronSet& s : covered) global.commit(s);
    run.trajectory.push_back(global.ratio());
  }
  return run;
}

Searcher::SeedRun Searcher::run_seed(const PreparedSeed& seed,
                                     GlobalCoverageMap& global) const {
  if (cfg_.max_iterations == 0) return {};
  auto opt = make_optimizer(
      derive_seed(cfg_.rng_seed,
                  {kOptimizerStream, static_cast<std::uint64_t>(seed.index)}),
      cfg_.max_iterations - 1);
  return evolve(*opt, seed, global);
}

TestReport Searcher::run_campaign(std::span<const SeedInput> seeds) const {
  if (seeds.empty()) throw Error("campaign needs at least one seed input");
  const auto start = std::chrono::steady_clock::now();

  TestReport report;
  report.config = cfg_;
  report.seed_count = seeds.size();

  GlobalCoverageMap global(model_.neuron_count());
  std::vector<PreparedSeed> prepared;
  prepared.reserve(seeds.size());
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    prepared.push_back(prepare(seeds[i], static_cast<int>(i)));
    if (prepared.back().admitted) ++report.admitted_count;
    global.commit(prepared.back().activated);
  }
  report.baseline_ratio = global.ratio();
  report.trajectory.push_back({-1, 0, report.baseline_ratio});

  // Misclassified seeds only take part when the divergence oracle is on.
  std::vector<const PreparedSeed*> searchable;
  for (const PreparedSeed& p : prepared) {
    if (p.admitted || cfg_.divergence_check) searchable.push_back(&p);
  }

  std::unique_ptr<Optimizer> shared;
  if (!cfg_.reinit_per_seed && cfg_.max_iterations > 0 && !searchable.empty()) {
    const int total = static_cast<int>(searchable.size()) * cfg_.max_iterations;
    shared = make_optimizer(derive_seed(cfg_.rng_seed, {kOptimizerStream}),
                            total - 1);
  }

  std::set<DedupKey> seen;
  for (const PreparedSeed* p : searchable) {
    SeedRun run = shared ? (cfg_.max_iterations > 0
                                ? evolve(*shared, *p, global)
                                : SeedRun{})
                         : run_seed(*p, global);
    report.evaluations += run.evaluations;
    for (std::size_t g = 0; g < run.trajectory.size(); ++g) {
      report.trajectory.push_back(
          {p->index, static_cast<int>(g), run.trajectory[g]});
    }
    for (Finding& f : run.findings) {
      if (!seen.insert(dedup_key(f)).second) continue;
      if (f.kind == FindingKind::kMisclassification) {
        ++report.misclassification_count;
      } else {
        ++report.divergence_count;
      }
      report.findings.push_back(std::move(f));
    }
  }

  report.neuron_total = global.total();
  report.covered_count = global.covered_count();
  report.final_ratio = global.ratio();
  report.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

Image Searcher::replay_mutant(const Finding& finding,
                              const Image& seed_image) const {
  Rng rng(finding.noise_seed);
  const MutantBatch batch = engine_.expand(seed_image, finding.transform, rng);
  return batch.at(finding.path);
}

}  // namespace swarmtest
