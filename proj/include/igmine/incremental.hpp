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

#ifndef IGMINE_INCREMENTAL_HPP
#define IGMINE_INCREMENTAL_HPP

#include <optional>
#include <span>

#include "igmine/state.hpp"

namespace igmine {

/// Delta count for one touched value: `is_new` iff the value first appears
/// in this batch (pre-update count was zero).
struct DeltaEntry {
  Count delta = 0;
  bool is_new = false;
};

/// Per-batch delta counts and the updated/new partition, extracted in one
/// pass over the batch. Work is proportional to delta_n * arity^2 and
/// never to the relation size.
struct DeltaCounts {
  Count row_count = 0;                                  // delta n
  std::vector<std::map<ValueId, DeltaEntry>> marginals;  // [attr]
  std::vector<JointTable> joints;                        // [pair_index(i,j)]
};

DeltaCounts extract_delta(const MiningState& state, const Batch& batch);

/// One touched value of a marginal or joint column: pre-update count and
/// the batch's delta (> 0). `prior == 0` marks a new value.
struct TouchedValue {
  ValueId value = 0;
  Count prior = 0;
  Count delta = 0;
};

/// Post-update marginal entropy H'(A_i) from the prior entropy and the
/// touched values only:
///   S_upd = sum over updated x of p*log_b(p),  p = prior/n
///   P_upd = sum over updated x of p
///   H1 = (n/n')*(H_old + S_upd) - (n/n')*log_b(n/n')*(1 - P_upd)
///   H2 = -sum over touched x of p'*log_b(p'), p' = (prior+delta)/n'
/// where "updated" are touched values with prior > 0. Throws InvalidDelta
/// when n' <= n or the deltas do not sum to n' - n.
double update_marginal_entropy(double h_old, std::span<const TouchedValue> touched,
                               Count n, Count n_prime, double log_base);

/// Post-update conditional entropy H'(A_i | A_j = y) for one condition
/// column. `touched` holds every x with a positive joint delta for y,
/// ascending; `cond_count`/`cond_delta` are f_j(y) and delta f_j(y).
///   case 1 (cond_count == 0): entropy of the delta column alone
///   case 2 (cond_delta == 0): returns h_old unchanged
///   case 3: with c = f_j(y)/f'_j(y), p = prior/f_j(y):
///     H1 = c*(H_old + S_upd) + c*log_b(1 + delta/f_j(y))*(1 - P_upd)
///     H2 = -sum p'*log_b(p'),  p' = (prior+delta)/f'_j(y)
/// Throws MissingPrior when case 2/3 lacks h_old, InconsistentDelta when
/// the column deltas do not sum to cond_delta.
double update_conditional_entropy(std::optional<double> h_old,
                                  std::span<const TouchedValue> touched,
                                  Count cond_count, Count cond_delta,
                                  double log_base);

/// Applies one batch: merges delta counts into the frequency tables,
/// refreshes every marginal entropy, and refreshes conditional entropies
/// only for conditions present in the batch (untouched cache entries are
/// not rewritten). The batch must be encoded against `state.dict`.
void update_states(MiningState& state, const Batch& batch);

}  // namespace igmine

#endif  // IGMINE_INCREMENTAL_HPP
