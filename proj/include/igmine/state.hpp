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

#ifndef IGMINE_STATE_HPP
#define IGMINE_STATE_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "igmine/relation.hpp"

namespace igmine {

/// Index of unordered pair {i,j}, i < j, into a flat triangular layout.
inline std::size_t pair_index(AttrIndex i, AttrIndex j, std::size_t arity) {
  // caller guarantees i < j < arity
  return static_cast<std::size_t>(i) * arity -
         static_cast<std::size_t>(i) * (i + 1) / 2 + (j - i - 1);
}

inline std::size_t pair_count(std::size_t arity) { return arity * (arity - 1) / 2; }

/// Index of ordered pair (i,j), i != j, for the conditional entropy cache.
inline std::size_t ordered_index(AttrIndex i, AttrIndex j, std::size_t arity) {
  return static_cast<std::size_t>(i) * arity + j;
}

/// Sparse joint table for one attribute pair {i,j}, i < j. Keys are
/// (value of A_i, value of A_j); zero entries are absent. Ordered so that
/// every summation runs in ascending value-id order.
using JointTable = std::map<std::pair<ValueId, ValueId>, Count>;

/// Exact frequency counts: tuple total, dense per-attribute marginals, and
/// one sparse joint table per unordered attribute pair.
struct FrequencyState {
  Count n = 0;
  std::vector<std::vector<Count>> marginals;  // [attr][value_id]
  std::vector<JointTable> joints;             // [pair_index(i,j)]

  Count marginal(AttrIndex attr, ValueId x) const {
    const auto& m = marginals[attr];
    return x < m.size() ? m[x] : 0;
  }

  /// f_ij(x, y) for any orientation; transposes the key when i > j.
  Count joint(AttrIndex i, ValueId x, AttrIndex j, ValueId y, std::size_t arity) const {
    const JointTable& table =
        joints[i < j ? pair_index(i, j, arity) : pair_index(j, i, arity)];
    auto it = i < j ? table.find({x, y}) : table.find({y, x});
    return it == table.end() ? 0 : it->second;
  }
};

/// Cached marginal entropies H(A_i) and conditional entropies
/// H(A_i | A_j = y), both orientations, in log_base units.
struct EntropyCache {
  std::vector<double> marginal;                     // [attr]
  std::vector<std::map<ValueId, double>> conditional;  // [ordered_index(i,j)] y -> H
};

/// The full state carried between batches. Single-writer: one batch is
/// applied at a time; concurrent readers are only allowed between updates.
struct MiningState {
  Schema schema;
  Dictionary dict;
  FrequencyState freq;
  EntropyCache entropy;
  double log_base = 2.0;
  std::uint64_t batch_count = 0;

  /// Logical table-cell reads+writes performed by the incremental update
  /// path. Used to assert the O(||delta r||) efficiency bound.
  mutable std::uint64_t touches = 0;

  std::size_t arity() const { return schema.arity(); }
  double inv_log_base() const { return 1.0 / std::log(log_base); }
};

/// Shannon entropy -sum (c/total) * log_b(c/total) over the counts in the
/// given (ascending value-id) order. Zero counts are skipped; throws
/// ZeroTotal when total == 0.
double entropy_from_counts(std::span<const Count> counts, Count total, double log_base);

/// Builds all state variables from scratch over one batch: a single
/// counting pass, then every marginal and conditional entropy.
MiningState init_states(const Batch& batch, Schema schema, Dictionary dict,
                        double log_base = 2.0);

/// Value-ids x of A_i with f_ij(x, y) > 0, ascending. Throws UnknownValue
/// when y is not in dom(A_j) and SameAttribute when i == j.
std::vector<ValueId> conditional_support(const MiningState& state, AttrIndex i,
                                         AttrIndex j, ValueId y);

}  // namespace igmine

#endif  // IGMINE_STATE_HPP
