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
#include <numeric>

#include "swarmtest/optimizers.h"

namespace swarmtest {

BatOptimizer::BatOptimizer(SearchBox box, const OptimizerOptions& options)
    : Optimizer(OptimizerKind::kBAT, std::move(box), options) {
  velocity_.assign(pop_size_, Position(dim(), 0.0));
  loudness_.assign(pop_size_, params_.bat_loudness0);
  accepted_.assign(pop_size_, 0);
  pulse_rate_.assign(pop_size_, pulse_rate_for(0));
}

double BatOptimizer::pulse_rate_for(int accepted) const {
  return params_.bat_pulse_rate0 *
         (1.0 - std::exp(-params_.bat_pulse_gamma * (accepted + 1)));
}

std::vector<Position> BatOptimizer::propose() {
  const double mean_loudness =
      std::accumulate(loudness_.begin(), loudness_.end(), 0.0) / pop_size_;
  const Position& best = best_position();
  std::vector<Position> out(pop_size_);
  for (int i = 0; i < pop_size_; ++i) {
    const double freq =
        params_.bat_freq_min +
        (params_.bat_freq_max - params_.bat_freq_min) * rand01();
    Position cand(dim());
    for (std::size_t d = 0; d < dim(); ++d) {
      // Velocities are bounded by the box range; unbounded they oscillate
      // with growing amplitude around the best bat.
      const double vmax = box_.range(d);
      velocity_[i][d] = std::clamp(
          velocity_[i][d] + (population_[i][d] - best[d]) * freq, -vmax, vmax);
      cand[d] = population_[i][d] + velocity_[i][d];
    }
    if (rand01() > pulse_rate_[i]) {
      // local random walk around the best solution
      for (std::size_t d = 0; d < dim(); ++d) {
        cand[d] = best[d] + uniform(rng_, -1.0, 1.0) * mean_loudness *
                                params_.bat_local_walk * box_.range(d);
      }
    }
    box_.clamp(cand);
    out[i] = std::move(cand);
  }
  return out;
}

void BatOptimizer::accept(const std::vector<Position>& asked,
                          std::span<const double> fitness) {
  if (iteration() == 0) {
    population_ = asked;
    fitness_.assign(fitness.begin(), fitness.end());
    return;
  }
  for (int i = 0; i < pop_size_; ++i) {
    if (fitness[i] >= fitness_[i] && rand01() < loudness_[i]) {
      population_[i] = asked[i];
      fitness_[i] = fitness[i];
      ++accepted_[i];
      loudness_[i] *= params_.bat_loudness_decay;
      pulse_rate_[i] = pulse_rate_for(accepted_[i]);
    }
  }
}

}  // namespace swarmtest
