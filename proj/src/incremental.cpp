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

#include "igmine/incremental.hpp"

#include <cmath>

namespace igmine {

namespace {

inline double canonical_zero(double h) { return h == 0.0 ? 0.0 : h; }

}  // namespace

DeltaCounts extract_delta(const MiningState& state, const Batch& batch) {
  const std::size_t arity = state.arity();
  if (batch.columns.size() != arity) {
    throw SchemaMismatch("batch has " + std::to_string(batch.columns.size()) +
                         " columns, state has " + std::to_string(arity));
  }
  const Count rows = batch.row_count();

  DeltaCounts delta;
  delta.row_count = rows;
  delta.marginals.resize(arity);
  delta.joints.resize(pair_count(arity));

  for (AttrIndex a = 0; a < arity; ++a) {
    auto& dm = delta.marginals[a];
    for (ValueId v : batch.columns[a]) {
      ++dm[v].delta;
      ++state.touches;
    }
    for (auto& [v, entry] : dm) {
      entry.is_new = state.freq.marginal(a, v) == 0;
      ++state.touches;
    }
  }
  for (AttrIndex i = 0; i + 1 < arity; ++i) {
    const auto& ci = batch.columns[i];
    for (AttrIndex j = i + 1; j < arity; ++j) {
      const auto& cj = batch.columns[j];
      JointTable& dj = delta.joints[pair_index(i, j, arity)];
      for (Count r = 0; r < rows; ++r) {
        ++dj[{ci[r], cj[r]}];
        ++state.touches;
      }
    }
  }
  return delta;
}

double update_marginal_entropy(double h_old, std::span<const TouchedValue> touched,
                               Count n, Count n_prime, double log_base) {
  if (n_prime <= n || n == 0) {
    throw InvalidDelta("n' = " + std::to_string(n_prime) +
                       " must exceed n = " + std::to_string(n));
  }
  Count delta_sum = 0;
  for (const auto& t : touched) {
    delta_sum += t.delta;
  }
  if (delta_sum != n_prime - n) {
    throw InvalidDelta("deltas sum to " + std::to_string(delta_sum) +
                       ", expected " + std::to_string(n_prime - n));
  }

  const double inv_log = 1.0 / std::log(log_base);
  const double dn = static_cast<double>(n);
  const double dnp = static_cast<double>(n_prime);
  const double ratio = dn / dnp;

  double s_upd = 0.0;  // sum of p*log(p) over updated values, pre-update p
  double p_upd = 0.0;
  double h2 = 0.0;
  for (const auto& t : touched) {
    if (t.prior > 0) {
      const double p = static_cast<double>(t.prior) / dn;
      s_upd += p * (std::log(p) * inv_log);
      p_upd += p;
    }
    const double pp = static_cast<double>(t.prior + t.delta) / dnp;
    h2 -= pp * (std::log(pp) * inv_log);
  }
  const double h1 =
      ratio * (h_old + s_upd) - ratio * (std::log(ratio) * inv_log) * (1.0 - p_upd);
  return canonical_zero(h1 + h2);
}

double update_conditional_entropy(std::optional<double> h_old,
                                  std::span<const TouchedValue> touched,
                                  Count cond_count, Count cond_delta,
                                  double log_base) {
  Count delta_sum = 0;
  for (const auto& t : touched) {
    delta_sum += t.delta;
  }
  if (delta_sum != cond_delta) {
    throw InconsistentDelta("column deltas sum to " + std::to_string(delta_sum) +
                            ", condition delta is " + std::to_string(cond_delta));
  }

  // Case 2: condition value absent from the batch; the column is unchanged.
  if (cond_delta == 0) {
    if (!h_old) {
      throw MissingPrior("unchanged condition requires a cached entropy");
    }
    return *h_old;
  }

  const double inv_log = 1.0 / std::log(log_base);
  const double dfy = static_cast<double>(cond_count + cond_delta);

  // Case 1: condition value is brand new; only the delta column exists.
  if (cond_count == 0) {
    double h = 0.0;
    for (const auto& t : touched) {
      const double p = static_cast<double>(t.delta) / dfy;
      h -= p * (std::log(p) * inv_log);
    }
    return canonical_zero(h);
  }

  // Case 3: existing condition value with new tuples.
  if (!h_old) {
    throw MissingPrior("updated condition requires a cached entropy");
  }
  const double fy = static_cast<double>(cond_count);
  const double c = fy / dfy;  // 1 / (1 + delta/f_j(y))
  const double log_growth =
      std::log(1.0 + static_cast<double>(cond_delta) / fy) * inv_log;

  double s_upd = 0.0;
  double p_upd = 0.0;
  double h2 = 0.0;
  for (const auto& t : touched) {
    if (t.prior > 0) {
      const double p = static_cast<double>(t.prior) / fy;
      s_upd += p * (std::log(p) * inv_log);
      p_upd += p;
    }
    const double pp = static_cast<double>(t.prior + t.delta) / dfy;
    h2 -= pp * (std::log(pp) * inv_log);
  }
  const double h1 = c * (*h_old + s_upd) + c * log_growth * (1.0 - p_upd);
  return canonical_zero(h1 + h2);
}

namespace {

// Staged conditional refresh: computed before any table is merged, written
// after. Case-2 cells never appear here, so they are never rewritten.
struct StagedConditional {
  std::size_t ordered;  // ordered_index(target, cond)
  ValueId cond_value;
  double entropy;
};

// Updates H(A_i | A_j = y) for every y with a positive delta, one
// orientation of one pair. `groups` maps each condition value to its
// touched target values (ascending) with prior and delta joint counts.
void stage_orientation(const MiningState& state, AttrIndex target, AttrIndex cond,
                       const std::map<ValueId, std::vector<TouchedValue>>& groups,
                       const std::map<ValueId, DeltaEntry>& cond_deltas,
                       std::vector<StagedConditional>& out) {
  const std::size_t arity = state.arity();
  const std::size_t oidx = ordered_index(target, cond, arity);
  const auto& cache = state.entropy.conditional[oidx];
  for (const auto& [y, column] : groups) {
    const Count fy = state.freq.marginal(cond, y);
    ++state.touches;
    const Count dfy = cond_deltas.at(y).delta;
    std::optional<double> h_old;
    if (auto it = cache.find(y); it != cache.end()) {
      h_old = it->second;
    }
    ++state.touches;
    if (fy > 0 && !h_old) {
      throw MissingPrior("H(" + state.schema.name(target) + "|" +
                         state.schema.name(cond) + "=id" + std::to_string(y) +
                         ") absent from cache");
    }
    out.push_back({oidx, y,
                   update_conditional_entropy(h_old, column, fy, dfy,
                                              state.log_base)});
    state.touches += column.size();
  }
}

}  // namespace

void update_states(MiningState& state, const Batch& batch) {
  if (batch.row_count() == 0) {
    throw EmptyBatch();
  }
  const std::size_t arity = state.arity();
  const Count n = state.freq.n;
  const Count n_prime = n + batch.row_count();

  const DeltaCounts delta = extract_delta(state, batch);

  // Stage every marginal entropy. Every attribute is touched: each
  // appended tuple carries one value per attribute.
  std::vector<double> staged_marginal(arity);
  std::vector<TouchedValue> touched;
  for (AttrIndex a = 0; a < arity; ++a) {
    touched.clear();
    for (const auto& [x, entry] : delta.marginals[a]) {
      touched.push_back({x, state.freq.marginal(a, x), entry.delta});
      ++state.touches;
    }
    staged_marginal[a] = update_marginal_entropy(
        state.entropy.marginal[a], touched, n, n_prime, state.log_base);
    state.touches += 2;  // prior read + staged write
  }

  // Stage conditional entropies for both orientations of every pair.
  std::vector<StagedConditional> staged_conditional;
  std::map<ValueId, std::vector<TouchedValue>> by_cond;
  for (AttrIndex i = 0; i + 1 < arity; ++i) {
    for (AttrIndex j = i + 1; j < arity; ++j) {
      const JointTable& dj = delta.joints[pair_index(i, j, arity)];

      // Orientation (target = i | cond = j): group delta cells by y.
      // Iteration is (x, y) ascending, so each group stays x-ascending.
      by_cond.clear();
      for (const auto& [key, d] : dj) {
        by_cond[key.second].push_back(
            {key.first, state.freq.joint(i, key.first, j, key.second, arity), d});
        ++state.touches;
      }
      stage_orientation(state, i, j, by_cond, delta.marginals[j],
                        staged_conditional);

      // Orientation (target = j | cond = i): groups keyed by x are
      // contiguous runs, already y-ascending.
      by_cond.clear();
      for (const auto& [key, d] : dj) {
        by_cond[key.first].push_back(
            {key.second, state.freq.joint(i, key.first, j, key.second, arity), d});
        ++state.touches;
      }
      stage_orientation(state, j, i, by_cond, delta.marginals[i],
                        staged_conditional);
    }
  }

  // Merge counts.
  state.freq.n = n_prime;
  for (AttrIndex a = 0; a < arity; ++a) {
    auto& m = state.freq.marginals[a];
    const std::size_t dom = state.dict.domain_size(a);
    if (m.size() < dom) {
      m.resize(dom, 0);
    }
    for (const auto& [x, entry] : delta.marginals[a]) {
      m[x] += entry.delta;
      ++state.touches;
    }
  }
  for (std::size_t p = 0; p < state.freq.joints.size(); ++p) {
    JointTable& table = state.freq.joints[p];
    for (const auto& [key, d] : delta.joints[p]) {
      table[key] += d;
      ++state.touches;
    }
  }

  // Publish staged entropies.
  for (AttrIndex a = 0; a < arity; ++a) {
    state.entropy.marginal[a] = staged_marginal[a];
    ++state.touches;
  }
  for (const auto& staged : staged_conditional) {
    state.entropy.conditional[staged.ordered][staged.cond_value] = staged.entropy;
    ++state.touches;
  }
  ++state.batch_count;
}

}  // namespace igmine
