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

#include "igmine/state.hpp"

#include <algorithm>
#include <unordered_map>

namespace igmine {

namespace {

// -0.0 can fall out of the H1/H2 algebra on degenerate distributions;
// normalize so equal states serialize to identical bytes.
inline double canonical_zero(double h) { return h == 0.0 ? 0.0 : h; }

inline void validate_log_base(double base) {
  if (!(base > 0.0) || base == 1.0 || !std::isfinite(base)) {
    throw BadConfig("log base must be finite, positive and != 1");
  }
}

}  // namespace

double entropy_from_counts(std::span<const Count> counts, Count total,
                           double log_base) {
  validate_log_base(log_base);
  if (total == 0) {
    throw ZeroTotal();
  }
  const double inv_log = 1.0 / std::log(log_base);
  const double inv_total = 1.0 / static_cast<double>(total);
  double h = 0.0;
  for (Count c : counts) {
    if (c == 0) {
      continue;
    }
    const double p = static_cast<double>(c) * inv_total;
    h -= p * (std::log(p) * inv_log);
  }
  return canonical_zero(h);
}

MiningState init_states(const Batch& batch, Schema schema, Dictionary dict,
                        double log_base) {
  validate_log_base(log_base);
  const Count rows = batch.row_count();
  if (rows == 0) {
    throw EmptyBatch();
  }
  const std::size_t arity = schema.arity();
  if (batch.columns.size() != arity) {
    throw SchemaMismatch("batch has " + std::to_string(batch.columns.size()) +
                         " columns, schema has " + std::to_string(arity));
  }

  MiningState state;
  state.schema = std::move(schema);
  state.dict = std::move(dict);
  state.log_base = log_base;
  state.batch_count = 1;
  state.freq.n = rows;

  // Counting pass. Joint counts accumulate in a hash map and are
  // materialized sorted, so downstream summations are order-deterministic.
  state.freq.marginals.resize(arity);
  for (std::size_t a = 0; a < arity; ++a) {
    state.freq.marginals[a].assign(state.dict.domain_size(static_cast<AttrIndex>(a)), 0);
    for (ValueId v : batch.columns[a]) {
      ++state.freq.marginals[a][v];
    }
  }

  state.freq.joints.resize(pair_count(arity));
  {
    std::unordered_map<std::uint64_t, Count> scratch;
    std::vector<std::pair<std::uint64_t, Count>> sorted;
    for (AttrIndex i = 0; i + 1 < arity; ++i) {
      const auto& ci = batch.columns[i];
      for (AttrIndex j = i + 1; j < arity; ++j) {
        const auto& cj = batch.columns[j];
        scratch.clear();
        scratch.reserve(256);
        for (Count r = 0; r < rows; ++r) {
          const std::uint64_t key =
              (static_cast<std::uint64_t>(ci[r]) << 32) | cj[r];
          ++scratch[key];
        }
        sorted.assign(scratch.begin(), scratch.end());
        std::sort(sorted.begin(), sorted.end());
        JointTable& table = state.freq.joints[pair_index(i, j, arity)];
        for (const auto& [key, count] : sorted) {
          table.emplace_hint(table.end(),
                             std::make_pair(static_cast<ValueId>(key >> 32),
                                            static_cast<ValueId>(key & 0xffffffffu)),
                             count);
        }
      }
    }
  }

  // Marginal entropies.
  const double inv_log = state.inv_log_base();
  state.entropy.marginal.resize(arity);
  for (std::size_t a = 0; a < arity; ++a) {
    state.entropy.marginal[a] =
        entropy_from_counts(state.freq.marginals[a], rows, log_base);
  }

  // Conditional entropies, both orientations, from one pass per pair.
  // Entries are keyed (x of A_i, y of A_j) ascending, so per-condition
  // sums accumulate in ascending target-id order.
  state.entropy.conditional.resize(arity * arity);
  std::vector<double> acc;
  for (AttrIndex i = 0; i + 1 < arity; ++i) {
    for (AttrIndex j = i + 1; j < arity; ++j) {
      const JointTable& table = state.freq.joints[pair_index(i, j, arity)];
      const auto& fi = state.freq.marginals[i];
      const auto& fj = state.freq.marginals[j];

      // Orientation (target = i | cond = j): group by y via accumulators.
      acc.assign(fj.size(), 0.0);
      for (const auto& [key, count] : table) {
        const ValueId y = key.second;
        const double p = static_cast<double>(count) / static_cast<double>(fj[y]);
        acc[y] += p * (std::log(p) * inv_log);
      }
      auto& cond_ij = state.entropy.conditional[ordered_index(i, j, arity)];
      for (ValueId y = 0; y < fj.size(); ++y) {
        if (fj[y] > 0) {
          cond_ij.emplace_hint(cond_ij.end(), y, canonical_zero(-acc[y]));
        }
      }

      // Orientation (target = j | cond = i): x-groups are contiguous.
      auto& cond_ji = state.entropy.conditional[ordered_index(j, i, arity)];
      auto it = table.begin();
      while (it != table.end()) {
        const ValueId x = it->first.first;
        const double fx = static_cast<double>(fi[x]);
        double sum = 0.0;
        for (; it != table.end() && it->first.first == x; ++it) {
          const double p = static_cast<double>(it->second) / fx;
          sum += p * (std::log(p) * inv_log);
        }
        cond_ji.emplace_hint(cond_ji.end(), x, canonical_zero(-sum));
      }
    }
  }
  return state;
}

std::vector<ValueId> conditional_support(const MiningState& state, AttrIndex i,
                                         AttrIndex j, ValueId y) {
  const std::size_t arity = state.arity();
  if (i >= arity || j >= arity) {
    throw UnknownAttribute("#" + std::to_string(i >= arity ? i : j));
  }
  if (i == j) {
    throw SameAttribute(i);
  }
  if (y >= state.dict.domain_size(j)) {
    throw UnknownValue("id " + std::to_string(y) + " of attribute '" +
                       state.schema.name(j) + "'");
  }
  std::vector<ValueId> support;
  if (i < j) {
    const JointTable& table = state.freq.joints[pair_index(i, j, arity)];
    for (const auto& [key, count] : table) {
      if (key.second == y && count > 0) {
        support.push_back(key.first);
      }
    }
  } else {
    const JointTable& table = state.freq.joints[pair_index(j, i, arity)];
    auto it = table.lower_bound({y, 0});
    for (; it != table.end() && it->first.first == y; ++it) {
      if (it->second > 0) {
        support.push_back(it->first.second);
      }
    }
  }
  return support;
}

}  // namespace igmine
