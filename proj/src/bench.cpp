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

#include "igmine/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <limits>
#include <span>
#include <ostream>

#include "igmine/incremental.hpp"
#include "igmine/oracle.hpp"
#include "igmine/synthgen.hpp"

namespace igmine {

std::string bench_mode_name(BenchMode mode) {
  return mode == BenchMode::incremental ? "incremental" : "overhaul";
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_seconds(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Encodes one slice of the generated stream against the shared dictionary.
Batch encode_slice(const Schema& schema, Dictionary& dict,
                   const std::vector<std::vector<std::string>>& rows,
                   std::uint64_t begin, std::uint64_t count) {
  std::vector<std::vector<std::string>> slice(rows.begin() + begin,
                                              rows.begin() + begin + count);
  return encode_batch(schema, dict, slice);
}

}  // namespace

BenchResult run_bench(const BenchConfig& config) {
  if (config.rows_init == 0 || config.batch_size == 0 || config.batches == 0) {
    throw BadConfig("rows-init, batch-size and batches must all be >= 1");
  }
  if (config.attributes < 2) {
    throw BadConfig("bench needs at least 2 attributes");
  }
  if (config.repetitions == 0) {
    throw BadConfig("repetitions must be >= 1");
  }

  GenConfig gen;
  gen.seed = config.seed;
  // One extra batch for warm-up.
  gen.rows = config.rows_init + config.batch_size * (config.batches + 1);
  for (std::uint32_t a = 0; a < config.attributes; ++a) {
    gen.attributes.emplace_back("a" + std::to_string(a), config.cardinality);
  }
  const auto rows = generate_rows(gen);

  std::vector<std::string> names;
  for (const auto& [name, card] : gen.attributes) {
    names.push_back(name);
  }
  Schema schema(names);
  Dictionary dict(schema.arity());

  const Batch init_batch = encode_slice(schema, dict, rows, 0, config.rows_init);
  MiningState state = init_states(init_batch, schema, dict, config.log_base);

  // Roll the stream forward once, untimed, keeping what each timing run
  // needs: the encoded batch plus either the pre-batch state (incremental;
  // domain-sized, never relation-sized) or the batch history (overhaul).
  struct Step {
    Batch batch;
    MiningState pre_state;       // filled in incremental mode only
    std::size_t history_length;  // overhaul mode
    Count total_rows;            // relation size after the batch
  };
  std::vector<Batch> history;
  history.push_back(init_batch);
  std::vector<Step> steps;
  steps.reserve(config.batches);
  std::uint64_t offset = config.rows_init;
  for (std::uint64_t b = 0; b <= config.batches; ++b) {
    Batch batch = encode_slice(state.schema, state.dict, rows, offset,
                               config.batch_size);
    offset += config.batch_size;
    if (b == 0) {
      // Warm-up batch: applied but never timed or recorded.
      update_states(state, batch);
      history.push_back(std::move(batch));
      continue;
    }
    Step step;
    if (config.mode == BenchMode::incremental) {
      step.pre_state = state;
    }
    update_states(state, batch);
    history.push_back(batch);
    step.batch = std::move(batch);
    step.history_length = history.size();
    step.total_rows = state.freq.n;
    steps.push_back(std::move(step));
  }

  // Time every batch `repetitions` times in shuffled order and keep the
  // minimum. Shuffling decorrelates slow environment drift from the
  // relation size; the minimum filters scheduler spikes.
  std::vector<double> best(steps.size(), std::numeric_limits<double>::infinity());
  std::vector<std::size_t> order(steps.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    order[i] = i;
  }
  SplitMix64 shuffle_rng(config.seed ^ 0x5851f42d4c957f2dULL);
  for (std::uint32_t rep = 0; rep < config.repetitions; ++rep) {
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[shuffle_rng.next_below(i)]);
    }
    for (const std::size_t b : order) {
      if (config.mode == BenchMode::incremental) {
        MiningState scratch = steps[b].pre_state;
        const auto start = Clock::now();
        update_states(scratch, steps[b].batch);
        best[b] = std::min(best[b], elapsed_seconds(start));
      } else {
        const std::span<const Batch> slice(history.data(),
                                           steps[b].history_length);
        const auto start = Clock::now();
        MiningState scratch =
            recompute_states(state.schema, state.dict, slice, config.log_base);
        best[b] = std::min(best[b], elapsed_seconds(start));
      }
    }
  }

  BenchResult result;
  result.mode = config.mode;
  for (std::size_t b = 0; b < steps.size(); ++b) {
    result.samples.push_back({b + 1, steps[b].total_rows, best[b]});
  }

  std::vector<double> xs;
  std::vector<double> ys;
  xs.reserve(result.samples.size());
  ys.reserve(result.samples.size());
  double sum = 0.0;
  for (const auto& s : result.samples) {
    xs.push_back(static_cast<double>(s.total_rows));
    ys.push_back(s.seconds);
    sum += s.seconds;
  }
  const LinearFit fit = linear_fit(xs, ys);
  result.slope_seconds_per_row = fit.slope;
  result.mean_seconds = sum / static_cast<double>(result.samples.size());
  result.normalized_slope_per_10k_rows =
      result.mean_seconds > 0.0 ? fit.slope * 10000.0 / result.mean_seconds : 0.0;
  result.first_batch_seconds = result.samples.front().seconds;
  result.last_batch_seconds = result.samples.back().seconds;
  return result;
}

LinearFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw BadConfig("linear fit needs at least two points");
  }
  const double n = static_cast<double>(x.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  LinearFit fit;
  if (sxx == 0.0) {
    throw BadConfig("linear fit needs varying x values");
  }
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

void write_bench_csv(const BenchResult& result, std::ostream& os) {
  os << "batch_index,total_rows,mode,batch_seconds\n";
  const std::string mode = bench_mode_name(result.mode);
  char buf[64];
  for (const auto& s : result.samples) {
    std::snprintf(buf, sizeof(buf), "%" PRIu64 ",%" PRIu64 ",%s,%.9f\n",
                  s.batch_index, s.total_rows, mode.c_str(), s.seconds);
    os << buf;
  }
}

}  // namespace igmine
