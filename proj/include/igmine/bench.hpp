/*
 * Copyright 2026 The igmine Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef IGMINE_BENCH_HPP
#define IGMINE_BENCH_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace igmine {

enum class BenchMode { incremental, overhaul };

std::string bench_mode_name(BenchMode mode);

/// Workload: a synthetic uniform stream, `rows_init` tuples initialized
/// via the scratch build, then `batches` appends of `batch_size` tuples.
/// Only the state computation is timed (parsing and encoding excluded);
/// one warm-up batch runs before the recorded ones. Each batch is timed
/// `repetitions` times on equal inputs and the minimum is recorded, which
/// filters scheduler noise out of the per-batch samples.
struct BenchConfig {
  std::uint64_t rows_init = 1000;
  std::uint64_t batch_size = 100;
  std::uint64_t batches = 50;
  BenchMode mode = BenchMode::incremental;
  std::uint64_t seed = 0;
  std::uint32_t attributes = 5;
  std::uint32_t cardinality = 8;
  std::uint32_t repetitions = 3;
  double log_base = 2.0;
};

struct BenchSample {
  std::uint64_t batch_index = 0;  // 1-based over recorded batches
  std::uint64_t total_rows = 0;   // relation size after the batch
  double seconds = 0.0;
};

struct BenchResult {
  BenchMode mode = BenchMode::incremental;
  std::vector<BenchSample> samples;
  double slope_seconds_per_row = 0.0;
  double mean_seconds = 0.0;
  /// Relative slope: (slope * 10000) / mean batch time. The constant-time
  /// claim holds when this stays near zero as the relation grows.
  double normalized_slope_per_10k_rows = 0.0;
  double first_batch_seconds = 0.0;
  double last_batch_seconds = 0.0;
};

BenchResult run_bench(const BenchConfig& config);

/// Ordinary least squares y = intercept + slope * x.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;
};

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

/// Writes the sample CSV: batch_index,total_rows,mode,batch_seconds.
void write_bench_csv(const BenchResult& result, std::ostream& os);

}  // namespace igmine

#endif  // IGMINE_BENCH_HPP
