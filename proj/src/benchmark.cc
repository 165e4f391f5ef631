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

#include "swarmtest/benchmark.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

namespace swarmtest {

std::string to_string(BenchmarkFunction fn) {
  switch (fn) {
    case BenchmarkFunction::kSphere: return "sphere";
    case BenchmarkFunction::kRastrigin: return "rastrigin";
    case BenchmarkFunction::kRosenbrock: return "rosenbrock";
  }
  return "unknown";
}

std::optional<BenchmarkFunction> parse_benchmark_function(
    const std::string& name) {
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  for (auto fn : {BenchmarkFunction::kSphere, BenchmarkFunction::kRastrigin,
                  BenchmarkFunction::kRosenbrock}) {
    if (to_string(fn) == lower) return fn;
  }
  return std::nullopt;
}

double evaluate(BenchmarkFunction fn, std::span<const double> x) {
  double sum = 0.0;
  switch (fn) {
    case BenchmarkFunction::kSphere:
      for (double v : x) sum += v * v;
      break;
    case BenchmarkFunction::kRastrigin:
      sum = 10.0 * static_cast<double>(x.size());
      for (double v : x) {
        sum += v * v - 10.0 * std::cos(2.0 * std::numbers::pi * v);
      }
      break;
    case BenchmarkFunction::kRosenbrock:
      for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double a = x[i + 1] - x[i] * x[i];
        const double b = 1.0 - x[i];
        sum += 100.0 * a * a + b * b;
      }
      break;
  }
  return sum;
}

SearchBox benchmark_box(BenchmarkFunction, std::size_t dim) {
  return {std::vector<double>(dim, -5.12), std::vector<double>(dim, 5.12)};
}

double BenchmarkResult::median_best() const {
  std::vector<double> best;
  for (const auto& r : runs) best.push_back(r.best());
  if (best.empty()) return 0.0;
  std::sort(best.begin(), best.end());
  const std::size_t n = best.size();
  return n % 2 ? best[n / 2] : 0.5 * (best[n / 2 - 1] + best[n / 2]);
}

BenchmarkResult run_benchmark(OptimizerKind kind, BenchmarkFunction fn,
                              int dim, int pop_size, int iterations, int seeds,
                              const OptimizerParams& params) {
  if (dim < 1 || iterations < 1 || seeds < 1) {
    throw OptimizerError("benchmark needs dim, iterations and seeds >= 1");
  }
  BenchmarkResult result{kind, fn, dim, pop_size, iterations, {}};
  for (int s = 1; s <= seeds; ++s) {
    OptimizerOptions options;
    options.pop_size = pop_size;
    options.horizon = iterations;
    options.seed = static_cast<std::uint64_t>(s);
    options.params = params;
    auto opt = Optimizer::create(kind, benchmark_box(fn, dim), options);
    BenchmarkRun run;
    run.seed = options.seed;
    std::vector<double> fitness(pop_size);
    for (int it = 0; it <= iterations; ++it) {
      const auto positions = opt->ask();
      for (int i = 0; i < pop_size; ++i) {
        fitness[i] = -evaluate(fn, positions[i]);
      }
      opt->tell(fitness);
      run.trajectory.push_back(-opt->best_fitness());
    }
    result.runs.push_back(std::move(run));
  }
  return result;
}

void write_trajectory_csv(const BenchmarkResult& result, std::ostream& out) {
  out << "seed,iteration,best_value\n";
  out.precision(17);
  for (const auto& run : result.runs) {
    for (std::size_t it = 0; it < run.trajectory.size(); ++it) {
      out << run.seed << ',' << it << ',' << run.trajectory[it] << '\n';
    }
  }
}

}  // namespace swarmtest
