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

#include "swarmtest/coverage.h"

#include <algorithm>
#include <bit>

namespace swarmtest {
namespace {

constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t universe) {
  return (universe + kWordBits - 1) / kWordBits;
}

}  // namespace

NeuronSet::NeuronSet(std::size_t universe)
    : universe_(universe), words_(word_count(universe), 0) {}

std::size_t NeuronSet::count() const {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool NeuronSet::contains(std::size_t index) const {
  if (index >= universe_) return false;
  return (words_[index / kWordBits] >> (index % kWordBits)) & 1u;
}

void NeuronSet::insert(std::size_t index) {
  if (index >= universe_) {
    throw Error("neuron index " + std::to_string(index) +
                " outside universe of " + std::to_string(universe_));
  }
  words_[index / kWordBits] |= std::uint64_t{1} << (index % kWordBits);
}

void NeuronSet::check_universe(const NeuronSet& other) const {
  if (universe_ != other.universe_) {
    throw Error("neuron sets from different models (" +
                std::to_string(universe_) + " vs " +
                std::to_string(other.universe_) + " neurons)");
  }
}

std::size_t NeuronSet::count_not_in(const NeuronSet& other) const {
  check_universe(other);
  std::size_t n = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    n += static_cast<std::size_t>(std::popcount(words_[i] & ~other.words_[i]));
  }
  return n;
}

std::size_t NeuronSet::merge(const NeuronSet& other) {
  check_universe(other);
  std::size_t added = 0;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    const std::uint64_t fresh = other.words_[i] & ~words_[i];
    added += static_cast<std::size_t>(std::popcount(fresh));
    words_[i] |= fresh;
  }
  return added;
}

bool NeuronSet::is_subset_of(const NeuronSet& other) const {
  return count_not_in(other) == 0;
}

std::vector<std::size_t> NeuronSet::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < universe_; ++i) {
    if (contains(i)) out.push_back(i);
  }
  return out;
}

NeuronLayout::NeuronLayout(const ActivationProfile& profile) {
  for (const auto& l : profile.per_layer) {
    if (!l.tracked) continue;
    spans_.push_back({l.layer, total_, l.values.size()});
    total_ += l.values.size();
  }
}

NeuronLayout::NeuronLayout(const Model& model) {
  const auto& layers = model.layers();
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (layers[i].kind == LayerKind::kSoftmax) continue;
    const std::size_t width = layers[i].output_shape.size();
    spans_.push_back({static_cast<int>(i), total_, width});
    total_ += width;
  }
}

std::size_t NeuronLayout::index_of(NeuronId id) const {
  for (const Span& s : spans_) {
    if (s.layer == id.layer) {
      if (id.unit < 0 || static_cast<std::size_t>(id.unit) >= s.width) break;
      return s.offset + static_cast<std::size_t>(id.unit);
    }
  }
  throw Error("neuron (" + std::to_string(id.layer) + ", " +
              std::to_string(id.unit) + ") is not tracked by this model");
}

NeuronId NeuronLayout::id_of(std::size_t index) const {
  for (const Span& s : spans_) {
    if (index >= s.offset && index < s.offset + s.width) {
      return {s.layer, static_cast<int>(index - s.offset)};
    }
  }
  throw Error("neuron index " + std::to_string(index) + " out of range");
}

NeuronSet activated_set(const ActivationProfile& profile, double threshold) {
  NeuronSet set(profile.neuron_count());
  std::size_t offset = 0;
  for (const auto& l : profile.per_layer) {
    if (!l.tracked) continue;
    if (!l.values.empty()) {
      const auto [lo_it, hi_it] =
          std::minmax_element(l.values.begin(), l.values.end());
      const double lo = *lo_it;
      const double span = static_cast<double>(*hi_it) - lo;
      if (span > 0.0) {
        for (std::size_t u = 0; u < l.values.size(); ++u) {
          if ((l.values[u] - lo) / span > threshold) set.insert(offset + u);
        }
      }
    }
    offset += l.values.size();
  }
  return set;
}

std::size_t nlnc(const NeuronSet& mutated, const NeuronSet& original) {
  return mutated.count_not_in(original);
}

double fitness(std::size_t nlnc_count, std::size_t ngnc_count, double alpha,
               double beta) {
  if (alpha < 0.0 || beta < 0.0) {
    throw Error("fitness weights must be non-negative");
  }
  return alpha * static_cast<double>(nlnc_count) +
         beta * static_cast<double>(ngnc_count);
}

FitnessBreakdown make_breakdown(std::size_t nlnc_count, std::size_t ngnc_count,
                                double alpha, double beta) {
  return {nlnc_count, ngnc_count, fitness(nlnc_count, ngnc_count, alpha, beta)};
}

GlobalCoverageMap::GlobalCoverageMap(std::size_t total) : covered_(total) {
  if (total == 0) throw Error("coverage map needs at least one neuron");
}

std::size_t GlobalCoverageMap::commit(const NeuronSet& set) {
  return covered_.merge(set);
}

double GlobalCoverageMap::ratio() const {
  return static_cast<double>(covered_.count()) /
         static_cast<double>(covered_.universe());
}

std::size_t ngnc(const NeuronSet& mutated, const GlobalCoverageMap& global) {
  return mutated.count_not_in(global.covered());
}

GlobalCoverageMap commit(GlobalCoverageMap global, const NeuronSet& set) {
  global.commit(set);
  return global;
}

double coverage_ratio(const GlobalCoverageMap& global) { return global.ratio(); }

}  // namespace swarmtest
