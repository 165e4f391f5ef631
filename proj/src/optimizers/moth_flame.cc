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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "swarmtest/optimizers.h"

namespace swarmtest {

MothFlameOptimizer::MothFlameOptimizer(SearchBox box,
                                       const OptimizerOptions& options)
    : Optimizer(OptimizerKind::kMFO, std::move(box), options) {}

int MothFlameOptimizer::flame_count() const {
  const double n = pop_size_;
  const double count =
      std::round(n - step() * (n - 1.0) / static_cast<double>(horizon_));
  return std::clamp(static_cast<int>(count), 1, pop_size_);
}

std::vector<Position> MothFlameOptimizer::propose() {
  const int flames = flame_count();
  // r decreases linearly from -1 to -2; spiral parameter t lies in [r, 1].
  const double r = -1.0 - static_cast<double>(step()) / horizon_;
  for (int i = 0; i < pop_size_; ++i) {
    const Position& flame = flames_[std::min(i, flames - 1)];
    Position& moth = population_[i];
    for (std::size_t d = 0; d < dim(); ++d) {
      const double dist = std::abs(flame[d] - moth[d]);
      const double t = (r - 1.0) * rand01() + 1.0;
      moth[d] = dist * std::exp(params_.mfo_spiral_b * t) *
                    std::cos(2.0 * std::numbers::pi * t) +
                flame[d];
    }
    box_.clamp(moth);
  }
  return population_;
}

void MothFlameOptimizer::accept(const std::vector<Position>& asked,
                                std::span<const double> fitness) {
  population_ = asked;
  fitness_.assign(fitness.begin(), fitness.end());

  std::vector<Position> pool = flames_;
  std::vector<double> pool_fitness = flame_fitness_;
  pool.insert(pool.end(), asked.begin(), asked.end());
  pool_fitness.insert(pool_fitness.end(), fitness.begin(), fitness.end());

  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pool_fitness[a] > pool_fitness[b];
  });
  flames_.clear();
  flame_fitness_.clear();
  for (int k = 0; k < pop_size_; ++k) {
    flames_.push_back(pool[order[k]]);
    flame_fitness_.push_back(pool_fitness[order[k]]);
  }
}

}  // namespace swarmtest
