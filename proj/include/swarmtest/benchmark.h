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

// Optimizer validation on classic minimization test functions. The harness
// negates the objective so the optimizers keep maximizing.

#ifndef SWARMTEST_BENCHMARK_H_
#define SWARMTEST_BENCHMARK_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "swarmtest/optimizer.h"

namespace swarmtest {

enum class BenchmarkFunction { kSphere, kRastrigin, kRosenbrock };

std::string to_string(BenchmarkFunction fn);
std::optional<BenchmarkFunction> parse_benchmark_function(
    const std::string& name);

double evaluate(BenchmarkFunction fn, std::span<const double> x);
// [-5.12, 5.12]^dim for every function.
SearchBox benchmark_box(BenchmarkFunction fn, std::size_t dim);

struct BenchmarkRun {
  std::uint64_t seed = 0;
  // Best (minimized) value after the initial population and after each
  // update: iterations + 1 entries, non-increasing.
  std::vector<double> trajectory;
  double best() const { return trajectory.back(); }
};

struct BenchmarkResult {
  OptimizerKind kind;
  BenchmarkFunction function;
  int dim = 0;
  int pop_size = 0;
  int iterations = 0;
  std::vector<BenchmarkRun> runs;

  double median_best() const;
};

// Runs `seeds` independent optimizations with seeds 1..seeds.
BenchmarkResult run_benchmark(OptimizerKind kind, BenchmarkFunction fn,
                              int dim, int pop_size, int iterations, int seeds,
                              const OptimizerParams& params = {});

// Header "seed,iteration,best_value" followed by one row per trajectory
// entry.
void write_trajectory_csv(const BenchmarkResult& result, std::ostream& out);

}  // namespace swarmtest

#endif  // SWARMTEST_BENCHMARK_H_
