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

// Concrete metaheuristics. Most callers only need Optimizer::create(); the
// classes are public so tests can inspect algorithm-specific state.

#ifndef SWARMTEST_OPTIMIZERS_H_
#define SWARMTEST_OPTIMIZERS_H_

#include <vector>

#include "swarmtest/optimizer.h"

namespace swarmtest {

// Particle swarm with linearly decreasing inertia. Velocities start at zero.
class PsoOptimizer : public Optimizer {
 public:
  PsoOptimizer(SearchBox box, const OptimizerOptions& options);
  const std::vector<Position>& velocities() const { return velocity_; }
  double inertia() const;

 protected:
  std::vector<Position> propose() override;
  void accept(const std::vector<Position>& asked,
              std::span<const double> fitness) override;

 private:
  std::vector<Position> velocity_;
  std::vector<Position> personal_best_;
  std::vector<double> personal_best_fitness_;
};

// Cuckoo search. Each generation produces one egg per nest: a Mantegna Levy
// flight from the nest, plus, for each component with probability pa, a
// biased random walk r * (x_j - x_k) between two random nests. Eggs replace
// their nest only if strictly better.
class CuckooOptimizer : public Optimizer {
 public:
  CuckooOptimizer(SearchBox box, const OptimizerOptions& options);
  // One Mantegna Levy step with the configured exponent.
  double levy_step();

 protected:
  std::vector<Position> propose() override;
  void accept(const std::vector<Position>& asked,
              std::span<const double> fitness) override;

 private:
  double mantegna_sigma_;
};

// Bat algorithm. Loudness A_i starts at A0 and is multiplied by the decay
// factor each time bat i accepts a move; pulse rate r_i = r0 (1 - exp(-g n))
// with n = 1 + accepted moves, so r_i only rises on acceptance.
class BatOptimizer : public Optimizer {
 public:
  BatOptimizer(SearchBox box, const OptimizerOptions& options);
  double loudness(std::size_t i) const { return loudness_[i]; }
  double pulse_rate(std::size_t i) const { return pulse_rate_[i]; }
  int accepted(std::size_t i) const { return accepted_[i]; }

 protected:
  std::vector<Position> propose() override;
  void accept(const std::vector<Position>& asked,
              std::span<const double> fitness) override;

 private:
  double pulse_rate_for(int accepted) const;

  std::vector<Position> velocity_;
  std::vector<double> loudness_;
  std::vector<double> pulse_rate_;
  std::vector<int> accepted_;
};

// Grey wolf optimizer; alpha/beta/delta are the three best positions seen.
class GreyWolfOptimizer : public Optimizer {
 public:
  GreyWolfOptimizer(SearchBox box, const OptimizerOptions& options);
  double control_a() const;

 protected:
  std::vector<Position> propose() override;
  void accept(const std::vector<Position>& asked,
              std::span<const double> fitness) override;

 private:
  struct Leader {
    Position position;
    double fitness = kUnset;
  };
  std::array<Leader, 3> leaders_;
};

// Moth-flame optimizer; flames are the best pop_size positions seen so far,
// and the number of active flames shrinks linearly to one.
class MothFlameOptimizer : public Optimizer {
 public:
  MothFlameOptimizer(SearchBox box, const OptimizerOptions& options);
  int flame_count() const;

 protected:
  std::vector<Position> propose() override;
  void accept(const std::vector<Position>& asked,
              std::span<const double> fitness) override;

 private:
  std::vector<Position> flames_;
  std::vector<double> flame_fitness_;
};

// Whale optimization: encircling, random search and spiral bubble-net moves.
class WhaleOptimizer : public Optimizer {
 public:
  WhaleOptimizer(SearchBox box, const OptimizerOptions& options);
  double control_a() const;

 protected:
  std::vector<Position> propose() override;
  void accept(const std::vector<Position>& asked,
              std::span<const double> fitness) override;
};

// Multi-verse optimizer: white/black hole exchange weighted by normalized
// inflation rate, then wormhole jumps around the best universe with
// probability WEP and distance TDR.
class MultiVerseOptimizer : public Optimizer {
 public:
  MultiVerseOptimizer(SearchBox box, const OptimizerOptions& options);
  double wormhole_existence_probability() const;
  double travelling_distance_rate() const;

 protected:
  std::vector<Position> propose() override;
  void accept(const std::vector<Position>& asked,
              std::span<const double> fitness) override;
};

}  // namespace swarmtest

#endif  // SWARMTEST_OPTIMIZERS_H_
