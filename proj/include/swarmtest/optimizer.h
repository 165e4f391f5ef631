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

// Swarm metaheuristics behind a common ask/tell maximization interface.
//
// Protocol: ask() returns pop_size positions, tell() receives their fitness
// values (higher is better). The first ask() returns the initial population
// sampled uniformly in the box; each later ask() applies the algorithm's
// update rule. Every returned position is clamped componentwise into the box.
//
// Schedules (inertia, control parameter a, WEP/TDR, flame count) run over
// `horizon` update steps: the update issued after the k-th tell uses
// t = min(k, horizon), so the last update of a run with horizon updates sees
// the schedule's end value.

#ifndef SWARMTEST_OPTIMIZER_H_
#define SWARMTEST_OPTIMIZER_H_

#include <array>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "swarmtest/image.h"
#include "swarmtest/random.h"

namespace swarmtest {

enum class OptimizerKind { kPSO, kCS, kBAT, kGWO, kMFO, kWOA, kMVO };

inline constexpr std::array<OptimizerKind, 7> kAllOptimizers = {
    OptimizerKind::kPSO, OptimizerKind::kCS,  OptimizerKind::kBAT,
    OptimizerKind::kGWO, OptimizerKind::kMFO, OptimizerKind::kWOA,
    OptimizerKind::kMVO};

std::string to_string(OptimizerKind kind);
// Case-insensitive; "CSA" is accepted for cuckoo search.
std::optional<OptimizerKind> parse_optimizer_kind(const std::string& name);

class OptimizerError : public Error {
 public:
  using Error::Error;
};

using Position = std::vector<double>;

struct SearchBox {
  std::vector<double> low;
  std::vector<double> high;

  std::size_t dim() const { return low.size(); }
  double range(std::size_t d) const { return high[d] - low[d]; }
  // Throws OptimizerError for empty, mismatched, non-finite or low > high.
  void validate() const;
  void clamp(Position& p) const;
  bool contains(const Position& p) const;
};

struct OptimizerParams {
  // PSO
  double pso_inertia_start = 0.9;
  double pso_inertia_end = 0.4;
  double pso_c1 = 2.0;
  double pso_c2 = 2.0;
  double pso_velocity_clamp = 0.2;  // fraction of each dimension's range
  // Cuckoo search
  double cs_discovery_rate = 0.25;
  double cs_levy_exponent = 1.5;
  double cs_step_scale = 0.01;  // fraction of range
  // Bat
  double bat_loudness0 = 0.5;
  double bat_pulse_rate0 = 0.5;
  double bat_freq_min = 0.0;
  double bat_freq_max = 2.0;
  double bat_loudness_decay = 0.9;  // A <- decay * A on acceptance
  double bat_pulse_gamma = 0.9;
  double bat_local_walk = 0.1;  // fraction of range scaled by mean loudness
  // Grey wolf
  double gwo_a_start = 2.0;
  double gwo_a_end = 0.0;
  // Moth-flame
  double mfo_spiral_b = 1.0;
  // Whale
  double woa_a_start = 2.0;
  double woa_a_end = 0.0;
  double woa_spiral_b = 1.0;
  // Multi-verse
  double mvo_wep_min = 0.2;
  double mvo_wep_max = 1.0;
  double mvo_tdr_exponent = 6.0;
};

// Linear schedule from `start` at t = 0 to `end` at t = horizon.
double linear_schedule(double start, double end, int t, int horizon);
// Travelling distance rate 1 - (t / T)^(1/p).
double mvo_tdr(int t, int horizon, double p);

struct OptimizerOptions {
  int pop_size = 10;
  int horizon = 10;  // number of update steps the schedules span
  std::uint64_t seed = 0;
  OptimizerParams params;
};

class Optimizer {
 public:
  virtual ~Optimizer() = default;

  // Throws OptimizerError for pop_size < 2, horizon < 1 or a bad box.
  static std::unique_ptr<Optimizer> create(OptimizerKind kind, SearchBox box,
                                           const OptimizerOptions& options);

  OptimizerKind kind() const { return kind_; }
  int pop_size() const { return pop_size_; }
  std::size_t dim() const { return box_.dim(); }
  const SearchBox& box() const { return box_; }
  const OptimizerParams& params() const { return params_; }
  int horizon() const { return horizon_; }

  // Number of completed tell() calls.
  int iteration() const { return iteration_; }

  // Throws OptimizerError if the previous ask() was not answered.
  std::vector<Position> ask();
  // Throws OptimizerError on wrong length, non-finite values or no pending
  // ask().
  void tell(std::span<const double> fitness);

  // Replaces the initial population. Only valid before the first ask();
  // positions are clamped into the box.
  void set_population(std::vector<Position> positions);

  bool has_best() const { return best_fitness_ > kUnset; }
  double best_fitness() const { return best_fitness_; }
  const Position& best_position() const { return best_position_; }

 protected:
  static constexpr double kUnset = -std::numeric_limits<double>::infinity();

  Optimizer(OptimizerKind kind, SearchBox box, const OptimizerOptions& options);

  // Positions for the next generation (called only after the first tell).
  virtual std::vector<Position> propose() = 0;
  // Incorporates the fitness of the positions returned by the last ask().
  // The base class has already updated the best-so-far.
  virtual void accept(const std::vector<Position>& asked,
                      std::span<const double> fitness) = 0;

  // Schedule step for the update being proposed.
  int step() const { return std::min(iteration_, horizon_); }
  double rand01() { return uniform01(rng_); }
  double normal();
  std::size_t rand_index(std::size_t n);

  SearchBox box_;
  OptimizerParams params_;
  int pop_size_;
  int horizon_;
  Rng rng_;

  // Current population and the fitness last told for it.
  std::vector<Position> population_;
  std::vector<double> fitness_;

 private:
  OptimizerKind kind_;
  int iteration_ = 0;
  bool awaiting_tell_ = false;
  std::vector<Position> pending_;
  Position best_position_;
  double best_fitness_ = kUnset;
};

}  // namespace swarmtest

#endif  // SWARMTEST_OPTIMIZER_H_
