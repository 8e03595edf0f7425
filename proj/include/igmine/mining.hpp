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

#ifndef IGMINE_MINING_HPP
#define IGMINE_MINING_HPP

#include <optional>
#include <string>

#include "igmine/state.hpp"

namespace igmine {

/// Heatmap percentile band: top25 = top quartile, top50 = next quartile.
enum class Band { top25, top50, base };

std::string band_name(Band band);

/// One mined cell: target attribute i scored under condition A_j = y.
/// `band` is set only by heatmap_bands.
struct IGCell {
  AttrIndex target = 0;
  AttrIndex cond_attr = 0;
  ValueId cond_value = 0;
  double ig = 0.0;
  std::optional<Band> band;
};

/// IG_i(A_j = y) = H(A_i) - H(A_i|A_j = y), straight from the caches.
/// May be negative. Throws SameAttribute when i == j and UnknownValue when
/// y has no support.
double information_gain(const MiningState& state, AttrIndex i, AttrIndex j,
                        ValueId y);

/// Every cell (ordered i != j, every y with f_j(y) > 0), restricted to
/// i == target when given, sorted by ig descending with ties broken by
/// (i, j, y) ascending; at most k cells returned.
std::vector<IGCell> top_k(const MiningState& state,
                          std::optional<AttrIndex> target, std::size_t k);

/// All cells for one target with percentile bands. Thresholds are the
/// nearest-rank 75th/50th percentiles of the cell population: the
/// ceil(N/4)-th and ceil(N/2)-th largest ig values. Cells are returned in
/// (cond_attr, cond_value) ascending order.
std::vector<IGCell> heatmap_bands(const MiningState& state, AttrIndex target);

/// I(A_i; A_j) = sum over y of p_j(y) * IG_i(A_j = y). Nonnegative up to
/// cache drift; symmetric in (i, j).
double mutual_information(const MiningState& state, AttrIndex i, AttrIndex j);

}  // namespace igmine

#endif  // IGMINE_MINING_HPP
