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

#include <cmath>
#include <numbers>

#include "swarmtest/optimizers.h"

namespace swarmtest {

WhaleOptimizer::WhaleOptimizer(SearchBox box, const OptimizerOptions& options)
    : Optimizer(OptimizerKind::kWOA, std::move(box), options) {}

double WhaleOptimizer::control_a() const {
  return linear_schedule(params_.woa_a_start, params_.woa_a_end, step(),
                         horizon_);
}

std::vector<Position> WhaleOptimizer::propose() {
  const double a = control_a();
  const double a2 = -1.0 - static_cast<double>(step()) / horizon_;
  const Position& leader = best_position();
  const std::vector<Position> snapshot = population_;
  for (int i = 0; i < pop_size_; ++i) {
    Position& x = population_[i];
    const double big_a = 2.0 * a * rand01() - a;
    const double c = 2.0 * rand01();
    const double l = (a2 - 1.0) * rand01() + 1.0;
    const double p = rand01();
    if (p < 0.5) {
      // Exploit around the leader when |A| < 1, otherwise follow a random
      // whale to explore.
      const Position& target =
          std::abs(big_a) < 1.0 ? leader : snapshot[rand_index(pop_size_)];
      for (std::size_t d = 0; d < dim(); ++d) {
        const double dist = std::abs(c * target[d] - x[d]);
        x[d] = target[d] - big_a * dist;
      }
    } else {
      for (std::size_t d = 0; d < dim(); ++d) {
        const double dist = std::abs(leader[d] - x[d]);
        x[d] = dist * std::exp(params_.woa_spiral_b * l) *
                   std::cos(2.0 * std::numbers::pi * l) +
               leader[d];
      }
    }
    box_.clamp(x);
  }
  return population_;
}

void WhaleOptimizer::accept(const std::vector<Position>& asked,
                            std::span<const double> fitness) {
  population_ = asked;
  fitness_.assign(fitness.begin(), fitness.end());
}

}  // namespace swarmtest
