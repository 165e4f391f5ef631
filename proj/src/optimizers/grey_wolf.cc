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

#include "swarmtest/optimizers.h"

namespace swarmtest {

GreyWolfOptimizer::GreyWolfOptimizer(SearchBox box,
                                     const OptimizerOptions& options)
    : Optimizer(OptimizerKind::kGWO, std::move(box), options) {}

double GreyWolfOptimizer::control_a() const {
  return linear_schedule(params_.gwo_a_start, params_.gwo_a_end, step(),
                         horizon_);
}

std::vector<Position> GreyWolfOptimizer::propose() {
  const double a = control_a();
  // With fewer than three distinct leaders the missing ones follow alpha.
  std::array<const Position*, 3> lead;
  for (std::size_t l = 0; l < 3; ++l) {
    lead[l] = leaders_[l].fitness > kUnset ? &leaders_[l].position
                                           : &leaders_[0].position;
  }
  for (Position& x : population_) {
    for (std::size_t d = 0; d < dim(); ++d) {
      double sum = 0.0;
      for (const Position* leader : lead) {
        const double big_a = 2.0 * a * rand01() - a;
        const double c = 2.0 * rand01();
        const double dist = std::abs(c * (*leader)[d] - x[d]);
        sum += (*leader)[d] - big_a * dist;
      }
      x[d] = sum / 3.0;
    }
    box_.clamp(x);
  }
  return population_;
}

void GreyWolfOptimizer::accept(const std::vector<Position>& asked,
                               std::span<const double> fitness) {
  population_ = asked;
  for (int i = 0; i < pop_size_; ++i) {
    fitness_[i] = fitness[i];
    const double f = fitness[i];
    if (f > leaders_[0].fitness) {
      leaders_[2] = leaders_[1];
      leaders_[1] = leaders_[0];
      leaders_[0] = {asked[i], f};
    } else if (f > leaders_[1].fitness) {
      leaders_[2] = leaders_[1];
      leaders_[1] = {asked[i], f};
    } else if (f > leaders_[2].fitness) {
      leaders_[2] = {asked[i], f};
    }
  }
}

}  // namespace swarmtest
