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

#include "swarmtest/optimizers.h"

namespace swarmtest {

MultiVerseOptimizer::MultiVerseOptimizer(SearchBox box,
                                         const OptimizerOptions& options)
    : Optimizer(OptimizerKind::kMVO, std::move(box), options) {}

double MultiVerseOptimizer::wormhole_existence_probability() const {
  return linear_schedule(params_.mvo_wep_min, params_.mvo_wep_max, step(),
                         horizon_);
}

double MultiVerseOptimizer::travelling_distance_rate() const {
  return mvo_tdr(step(), horizon_, params_.mvo_tdr_exponent);
}

std::vector<Position> MultiVerseOptimizer::propose() {
  const double wep = wormhole_existence_probability();
  const double tdr = travelling_distance_rate();
  const auto [lo_it, hi_it] = std::minmax_element(fitness_.begin(), fitness_.end());
  const double lo = *lo_it;
  const double span = *hi_it - lo;

  // Normalized inflation rate: 1 for the worst universe, 0 for the best.
  // Worse universes receive more objects through black holes.
  std::vector<double> inflation(pop_size_, 0.0);
  // Roulette weights for choosing the white hole: better universes send.
  std::vector<double> weight(pop_size_, 1.0);
  double weight_sum = 0.0;
  for (int i = 0; i < pop_size_; ++i) {
    if (span > 0.0) {
      inflation[i] = (*hi_it - fitness_[i]) / span;
      weight[i] = (fitness_[i] - lo) / span + 1e-12;
    }
    weight_sum += weight[i];
  }
  auto roulette = [&]() {
    double r = rand01() * weight_sum;
    for (int k = 0; k < pop_size_; ++k) {
      r -= weight[k];
      if (r <= 0.0) return k;
    }
    return pop_size_ - 1;
  };

  const std::vector<Position> snapshot = population_;
  const Position& best = best_position();
  for (int i = 0; i < pop_size_; ++i) {
    Position& x = population_[i];
    for (std::size_t d = 0; d < dim(); ++d) {
      if (rand01() < inflation[i]) x[d] = snapshot[roulette()][d];
      if (rand01() < wep) {
        const double jump = tdr * box_.range(d) * rand01();
        x[d] = rand01() < 0.5 ? best[d] + jump : best[d] - jump;
      }
    }
    box_.clamp(x);
  }
  return population_;
}

void MultiVerseOptimizer::accept(const std::vector<Position>& asked,
                                 std::span<const double> fitness) {
  population_ = asked;
  fitness_.assign(fitness.begin(), fitness.end());
}

}  // namespace swarmtest
