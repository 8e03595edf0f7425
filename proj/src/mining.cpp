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

#include "igmine/mining.hpp"

#include <algorithm>
#include <tuple>

namespace igmine {

std::string band_name(Band band) {
  switch (band) {
    case Band::top25:
      return "top25";
    case Band::top50:
      return "top50";
    case Band::base:
      return "base";
  }
  return "base";
}

namespace {

void check_attr(const MiningState& state, AttrIndex a) {
  if (a >= state.arity()) {
    throw UnknownAttribute("#" + std::to_string(a));
  }
}

bool cell_less(const IGCell& a, const IGCell& b) {
  if (a.ig != b.ig) {
    return a.ig > b.ig;
  }
  return std::tie(a.target, a.cond_attr, a.cond_value) <
         std::tie(b.target, b.cond_attr, b.cond_value);
}

// Appends every cell with the given target attribute, enumerated in
// (cond_attr, cond_value) ascending order.
void collect_cells(const MiningState& state, AttrIndex target,
                   std::vector<IGCell>& out) {
  const std::size_t arity = state.arity();
  const double h_target = state.entropy.marginal[target];
  for (AttrIndex j = 0; j < arity; ++j) {
    if (j == target) {
      continue;
    }
    const auto& cache = state.entropy.conditional[ordered_index(target, j, arity)];
    for (const auto& [y, h_cond] : cache) {
      out.push_back({target, j, y, h_target - h_cond, std::nullopt});
    }
  }
}

}  // namespace

double information_gain(const MiningState& state, AttrIndex i, AttrIndex j,
                        ValueId y) {
  check_attr(state, i);
  check_attr(state, j);
  if (i == j) {
    throw SameAttribute(i);
  }
  if (state.freq.marginal(j, y) == 0) {
    throw UnknownValue("id " + std::to_string(y) + " of attribute '" +
                       state.schema.name(j) + "'");
  }
  const auto& cache = state.entropy.conditional[ordered_index(i, j, state.arity())];
  const auto it = cache.find(y);
  if (it == cache.end()) {
    throw UnknownValue("no cached entropy for id " + std::to_string(y) +
                       " of attribute '" + state.schema.name(j) + "'");
  }
  return state.entropy.marginal[i] - it->second;
}

std::vector<IGCell> top_k(const MiningState& state,
                          std::optional<AttrIndex> target, std::size_t k) {
  std::vector<IGCell> cells;
  if (target) {
    check_attr(state, *target);
    collect_cells(state, *target, cells);
  } else {
    for (AttrIndex i = 0; i < state.arity(); ++i) {
      collect_cells(state, i, cells);
    }
  }
  std::sort(cells.begin(), cells.end(), cell_less);
  if (cells.size() > k) {
    cells.resize(k);
  }
  return cells;
}

std::vector<IGCell> heatmap_bands(const MiningState& state, AttrIndex target) {
  check_attr(state, target);
  std::vector<IGCell> cells;
  collect_cells(state, target, cells);
  if (cells.empty()) {
    return cells;
  }
  std::vector<double> scores;
  scores.reserve(cells.size());
  for (const auto& c : cells) {
    scores.push_back(c.ig);
  }
  std::sort(scores.begin(), scores.end(), std::greater<>());
  const std::size_t n = scores.size();
  const double p75 = scores[(n + 3) / 4 - 1];  // ceil(n/4)-th largest
  const double p50 = scores[(n + 1) / 2 - 1];  // ceil(n/2)-th largest
  for (auto& c : cells) {
    c.band = c.ig >= p75 ? Band::top25 : (c.ig >= p50 ? Band::top50 : Band::base);
  }
  return cells;
}

double mutual_information(const MiningState& state, AttrIndex i, AttrIndex j) {
  check_attr(state, i);
  check_attr(state, j);
  if (i == j) {
    throw SameAttribute(i);
  }
  const double h_target = state.entropy.marginal[i];
  const double inv_n = 1.0 / static_cast<double>(state.freq.n);
  const auto& cache = state.entropy.conditional[ordered_index(i, j, state.arity())];
  double mi = 0.0;
  for (const auto& [y, h_cond] : cache) {
    const double py = static_cast<double>(state.freq.marginal(j, y)) * inv_n;
    mi += py * (h_target - h_cond);
  }
  return mi;
}

}  // namespace igmine
