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

#include "swarmtest/optimizer.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include "swarmtest/optimizers.h"

namespace swarmtest {

std::string to_string(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::kPSO: return "PSO";
    case OptimizerKind::kCS: return "CS";
    case OptimizerKind::kBAT: return "BAT";
    case OptimizerKind::kGWO: return "GWO";
    case OptimizerKind::kMFO: return "MFO";
    case OptimizerKind::kWOA: return "WOA";
    case OptimizerKind::kMVO: return "MVO";
  }
  return "unknown";
}

std::optional<OptimizerKind> parse_optimizer_kind(const std::string& name) {
  std::string upper = name;
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  if (upper == "CSA") return OptimizerKind::kCS;
  for (OptimizerKind k : kAllOptimizers) {
    if (to_string(k) == upper) return k;
  }
  return std::nullopt;
}

void SearchBox::validate() const {
  if (low.empty() || low.size() != high.size()) {
    throw OptimizerError("search box needs matching, non-empty bounds");
  }
  for (std::size_t d = 0; d < low.size(); ++d) {
    if (!std::isfinite(low[d]) || !std::isfinite(high[d])) {
      throw OptimizerError("non-finite bound in dimension " +
                           std::to_string(d));
    }
    if (low[d] > high[d]) {
      throw OptimizerError("degenerate bounds: low > high in dimension " +
                           std::to_string(d));
    }
  }
}

void SearchBox::clamp(Position& p) const {
  for (std::size_t d = 0; d < p.size(); ++d) {
    // NaN (from a degenerate update) collapses onto the lower bound.
    p[d] = std::isnan(p[d]) ? low[d] : std::clamp(p[d], low[d], high[d]);
  }
}

bool SearchBox::contains(const Position& p) const {
  if (p.size() != dim()) return false;
  for (std::size_t d = 0; d < p.size(); ++d) {
    if (!(p[d] >= low[d] && p[d] <= high[d])) return false;
  }
  return true;
}

double linear_schedule(double start, double end, int t, int horizon) {
  if (horizon <= 0) return end;
  const double frac =
      std::clamp(static_cast<double>(t) / horizon, 0.0, 1.0);
  return start + (end - start) * frac;
}

double mvo_tdr(int t, int horizon, double p) {
  if (horizon <= 0) return 0.0;
  const double frac = std::clamp(static_cast<double>(t) / horizon, 0.0, 1.0);
  return 1.0 - std::pow(frac, 1.0 / p);
}

std::unique_ptr<Optimizer> Optimizer::create(OptimizerKind kind,
                                             SearchBox box,
                                             const OptimizerOptions& options) {
  switch (kind) {
    case OptimizerKind::kPSO:
      return std::make_unique<PsoOptimizer>(std::move(box), options);
    case OptimizerKind::kCS:
      return std::make_unique<CuckooOptimizer>(std::move(box), options);
    case OptimizerKind::kBAT:
      return std::make_unique<BatOptimizer>(std::move(box), options);
    case OptimizerKind::kGWO:
      return std::make_unique<GreyWolfOptimizer>(std::move(box), options);
    case OptimizerKind::kMFO:
      return std::make_unique<MothFlameOptimizer>(std::move(box), options);
    case OptimizerKind::kWOA:
      return std::make_unique<WhaleOptimizer>(std::move(box), options);
    case OptimizerKind::kMVO:
      return std::make_unique<MultiVerseOptimizer>(std::move(box), options);
  }
  throw OptimizerError("unknown optimizer kind");
}

Optimizer::Optimizer(OptimizerKind kind, SearchBox box,
                     const OptimizerOptions& options)
    : box_(std::move(box)),
      params_(options.params),
      pop_size_(options.pop_size),
      horizon_(options.horizon),
      rng_(options.seed),
      kind_(kind) {
  box_.validate();
  if (pop_size_ < 2) {
    throw OptimizerError("population size must be at least 2, got " +
                         std::to_string(pop_size_));
  }
  if (horizon_ < 1) throw OptimizerError("horizon must be at least 1");
  population_.resize(pop_size_);
  for (Position& p : population_) {
    p.resize(box_.dim());
    for (std::size_t d = 0; d < p.size(); ++d) {
      p[d] = uniform(rng_, box_.low[d], box_.high[d]);
    }
    box_.clamp(p);
  }
  fitness_.assign(pop_size_, kUnset);
}

void Optimizer::set_population(std::vector<Position> positions) {
  if (iteration_ != 0 || awaiting_tell_) {
    throw OptimizerError("set_population is only valid before the first ask");
  }
  if (positions.size() != static_cast<std::size_t>(pop_size_)) {
    throw OptimizerError("set_population: expected " +
                         std::to_string(pop_size_) + " positions");
  }
  for (Position& p : positions) {
    if (p.size() != box_.dim()) {
      throw OptimizerError("set_population: wrong dimension");
    }
    box_.clamp(p);
  }
  population_ = std::move(positions);
}

std::vector<Position> Optimizer::ask() {
  if (awaiting_tell_) {
    throw OptimizerError("ask called twice without tell");
  }
  std::vector<Position> next = iteration_ == 0 ? population_ : propose();
  for (Position& p : next) box_.clamp(p);
  pending_ = next;
  awaiting_tell_ = true;
  return next;
}

void Optimizer::tell(std::span<const double> fitness) {
  if (!awaiting_tell_) throw OptimizerError("tell without a pending ask");
  if (fitness.size() != pending_.size()) {
    throw OptimizerError("tell: expected " + std::to_string(pending_.size()) +
                         " fitness values, got " +
                         std::to_string(fitness.size()));
  }
  for (double f : fitness) {
    if (!std::isfinite(f)) throw OptimizerError("tell: non-finite fitness");
  }
  for (std::size_t i = 0; i < fitness.size(); ++i) {
    if (fitness[i] > best_fitness_) {
      best_fitness_ = fitness[i];
      best_position_ = pending_[i];
    }
  }
  accept(pending_, fitness);
  awaiting_tell_ = false;
  ++iteration_;
}

double Optimizer::normal() {
  // Box-Muller on our own uniform stream keeps runs identical across
  // standard library implementations.
  const double u1 = 1.0 - rand01();  // (0, 1]
  const double u2 = rand01();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::size_t Optimizer::rand_index(std::size_t n) {
  return std::min(n - 1, static_cast<std::size_t>(rand01() * n));
}

}  // namespace swarmtest
