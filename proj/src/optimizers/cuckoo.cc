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

CuckooOptimizer::CuckooOptimizer(SearchBox box,
                                 const OptimizerOptions& options)
    : Optimizer(OptimizerKind::kCS, std::move(box), options) {
  const double beta = params_.cs_levy_exponent;
  mantegna_sigma_ = std::pow(
      std::tgamma(1.0 + beta) * std::sin(std::numbers::pi * beta / 2.0) /
          (std::tgamma((1.0 + beta) / 2.0) * beta *
           std::pow(2.0, (beta - 1.0) / 2.0)),
      1.0 / beta);
}

double CuckooOptimizer::levy_step() {
  const double u = normal() * mantegna_sigma_;
  const double v = normal();
  return u / std::pow(std::abs(v), 1.0 / params_.cs_levy_exponent);
}

std::vector<Position> CuckooOptimizer::propose() {
  std::vector<Position> eggs = population_;
  for (int i = 0; i < pop_size_; ++i) {
    const std::size_t j = rand_index(pop_size_);
    const std::size_t k = rand_index(pop_size_);
    for (std::size_t d = 0; d < dim(); ++d) {
      eggs[i][d] += params_.cs_step_scale * box_.range(d) * levy_step();
      if (rand01() < params_.cs_discovery_rate) {
        eggs[i][d] += rand01() * (population_[j][d] - population_[k][d]);
      }
    }
    box_.clamp(eggs[i]);
  }
  return eggs;
}

void CuckooOptimizer::accept(const std::vector<Position>& asked,
                             std::span<const double> fitness) {
  for (int i = 0; i < pop_size_; ++i) {
    if (fitness[i] > fitness_[i]) {
      population_[i] = asked[i];
      fitness_[i] = fitness[i];
    }
  }
}

}  // namespace swarmtest
