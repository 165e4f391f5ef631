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

PsoOptimizer::PsoOptimizer(SearchBox box, const OptimizerOptions& options)
    : Optimizer(OptimizerKind::kPSO, std::move(box), options) {
  velocity_.assign(pop_size_, Position(dim(), 0.0));
  personal_best_fitness_.assign(pop_size_, kUnset);
}

double PsoOptimizer::inertia() const {
  return linear_schedule(params_.pso_inertia_start, params_.pso_inertia_end,
                         step(), horizon_);
}

std::vector<Position> PsoOptimizer::propose() {
  const double w = inertia();
  for (int i = 0; i < pop_size_; ++i) {
    Position& x = population_[i];
    Position& v = velocity_[i];
    for (std::size_t d = 0; d < dim(); ++d) {
      const double vmax = params_.pso_velocity_clamp * box_.range(d);
      const double r1 = rand01();
      const double r2 = rand01();
      double vd = w * v[d] + params_.pso_c1 * r1 * (personal_best_[i][d] - x[d]) +
                  params_.pso_c2 * r2 * (best_position()[d] - x[d]);
      v[d] = std::clamp(vd, -vmax, vmax);
      x[d] += v[d];
    }
    box_.clamp(x);
  }
  return population_;
}

void PsoOptimizer::accept(const std::vector<Position>& asked,
                          std::span<const double> fitness) {
  population_ = asked;
  if (personal_best_.empty()) personal_best_ = asked;
  for (int i = 0; i < pop_size_; ++i) {
    fitness_[i] = fitness[i];
    if (fitness[i] > personal_best_fitness_[i]) {
      personal_best_fitness_[i] = fitness[i];
      personal_best_[i] = asked[i];
    }
  }
}

}  // namespace swarmtest
