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

#ifndef IGMINE_ORACLE_HPP
#define IGMINE_ORACLE_HPP

#include <span>
#include <string>

#include "igmine/state.hpp"

namespace igmine {

/// Scratch recomputation over every batch appended so far: the linear-time
/// overhaul baseline. Shares the given dictionary so value-ids align.
/// Clarity over speed; callers retain the raw batches (O(n) memory).
MiningState recompute_states(const Schema& schema, const Dictionary& dict,
                             std::span<const Batch> batches, double log_base);

/// Scratch recomputation from raw string rows, building a fresh dictionary
/// by first appearance. Reproduces the dictionary of any state built over
/// the same row stream.
MiningState recompute_from_rows(const std::vector<std::string>& attribute_names,
                                const std::vector<std::vector<std::string>>& rows,
                                double log_base,
                                const std::string& null_token = kDefaultNullToken);

/// Outcome of comparing two states: count mismatches are hard failures,
/// entropy differences are measured against the tolerance.
struct DriftReport {
  bool counts_equal = true;
  std::string mismatch;  // first offending location, empty when counts match
  double max_marginal_diff = 0.0;
  double max_conditional_diff = 0.0;
  double tolerance = 0.0;

  double max_diff() const {
    return max_marginal_diff > max_conditional_diff ? max_marginal_diff
                                                    : max_conditional_diff;
  }
  bool pass() const { return counts_equal && max_diff() <= tolerance; }
  std::string summary() const;
};

/// Compares counts exactly and entropy caches within `tol`. Throws
/// SchemaMismatch when schema, dictionary, or log base differ.
DriftReport compare_states(const MiningState& a, const MiningState& b, double tol);

}  // namespace igmine

#endif  // IGMINE_ORACLE_HPP
