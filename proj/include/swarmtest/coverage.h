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

// Neuron-coverage bookkeeping.
//
// Neurons are addressed by a flat index into the tracked layers of an
// ActivationProfile (tracked layers in order, units in order within a layer).
// NeuronSet is a fixed-universe bitset over those indices.

#ifndef SWARMTEST_COVERAGE_H_
#define SWARMTEST_COVERAGE_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "swarmtest/model.h"

namespace swarmtest {

inline constexpr double kDefaultActivationThreshold = 0.25;

struct NeuronId {
  int layer = 0;  // model layer index
  int unit = 0;
  friend bool operator==(const NeuronId&, const NeuronId&) = default;
};

class NeuronSet {
 public:
  NeuronSet() = default;
  explicit NeuronSet(std::size_t universe);

  std::size_t universe() const { return universe_; }
  std::size_t count() const;
  bool empty() const { return count() == 0; }

  bool contains(std::size_t index) const;
  void insert(std::size_t index);

  // |this \ other|. Universes must match.
  std::size_t count_not_in(const NeuronSet& other) const;
  // this |= other; returns the number of newly added neurons.
  std::size_t merge(const NeuronSet& other);

  bool is_subset_of(const NeuronSet& other) const;
  std::vector<std::size_t> indices() const;

  friend bool operator==(const NeuronSet&, const NeuronSet&) = default;

 private:
  void check_universe(const NeuronSet& other) const;

  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

// Maps NeuronId <-> flat index for one model.
class NeuronLayout {
 public:
  explicit NeuronLayout(const ActivationProfile& profile);
  explicit NeuronLayout(const Model& model);

  std::size_t total() const { return total_; }
  std::size_t index_of(NeuronId id) const;
  NeuronId id_of(std::size_t index) const;

 private:
  struct Span {
    int layer;
    std::size_t offset;
    std::size_t width;
  };
  std::vector<Span> spans_;
  std::size_t total_ = 0;
};

// A neuron is activated iff its activation, min-max scaled within its own
// layer of this single profile, strictly exceeds `threshold`. Layers whose
// values are all equal scale to zero and activate nothing.
NeuronSet activated_set(const ActivationProfile& profile,
                        double threshold = kDefaultActivationThreshold);

// Neurons of `mutated` not covered by the seed input's own set.
std::size_t nlnc(const NeuronSet& mutated, const NeuronSet& original);

struct FitnessBreakdown {
  std::size_t nlnc = 0;
  std::size_t ngnc = 0;
  double value = 0.0;
};

// alpha * nlnc + beta * ngnc. Throws Error for negative weights.
double fitness(std::size_t nlnc_count, std::size_t ngnc_count, double alpha,
               double beta);
FitnessBreakdown make_breakdown(std::size_t nlnc_count, std::size_t ngnc_count,
                                double alpha, double beta);

// Campaign-wide covered set. Only grows.
class GlobalCoverageMap {
 public:
  explicit GlobalCoverageMap(std::size_t total);

  const NeuronSet& covered() const { return covered_; }
  std::size_t total() const { return covered_.universe(); }
  std::size_t covered_count() const { return covered_.count(); }

  // Returns the number of newly covered neurons.
  std::size_t commit(const NeuronSet& set);
  double ratio() const;

 private:
  NeuronSet covered_;
};

// Neurons of `mutated` not yet in the global map.
std::size_t ngnc(const NeuronSet& mutated, const GlobalCoverageMap& global);

// Value-returning form of GlobalCoverageMap::commit.
GlobalCoverageMap commit(GlobalCoverageMap global, const NeuronSet& set);

double coverage_ratio(const GlobalCoverageMap& global);

}  // namespace swarmtest

#endif  // SWARMTEST_COVERAGE_H_
