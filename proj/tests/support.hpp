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

#ifndef IGMINE_TESTS_SUPPORT_HPP
#define IGMINE_TESTS_SUPPORT_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "igmine/incremental.hpp"
#include "igmine/oracle.hpp"
#include "igmine/state.hpp"

namespace igtest {

using namespace igmine;

inline MiningState make_state(const std::vector<std::string>& names,
                              const std::vector<std::vector<std::string>>& rows,
                              double log_base = 2.0) {
  Schema schema(names);
  Dictionary dict(schema.arity());
  const Batch batch = encode_batch(schema, dict, rows);
  return init_states(batch, std::move(schema), std::move(dict), log_base);
}

/// The hand-checkable A/B fixture: A=[a,a,b,b], B=[y,y,y,z].
inline MiningState fixture_ab() {
  return make_state({"A", "B"}, {{"a", "y"}, {"a", "y"}, {"b", "y"}, {"b", "z"}});
}

inline Batch encode_rows(MiningState& state,
                         const std::vector<std::vector<std::string>>& rows) {
  return encode_batch(state.schema, state.dict, rows);
}

// -----------------------------------------------------------------------
// Brute-force oracle: recomputes every count and entropy from string rows
// with plain maps and the textbook definition. Shares nothing with the
// engine's counting or update paths.
// -----------------------------------------------------------------------

struct BruteOracle {
  std::size_t arity = 0;
  double log_base = 2.0;
  std::vector<std::map<std::string, std::uint64_t>> marginal_counts;
  std::vector<double> marginal_entropy;
  // conditional[i * arity + j]: raw y -> H(A_i | A_j = y)
  std::vector<std::map<std::string, double>> conditional;
  // joint counts keyed by raw value pair, per (i, j) with i < j
  std::map<std::pair<std::size_t, std::size_t>,
           std::map<std::pair<std::string, std::string>, std::uint64_t>>
      joints;
};

inline double brute_entropy(const std::map<std::string, std::uint64_t>& counts,
                            double log_base) {
  double total = 0.0;
  for (const auto& [value, c] : counts) {
    total += static_cast<double>(c);
  }
  double h = 0.0;
  for (const auto& [value, c] : counts) {
    const double p = static_cast<double>(c) / total;
    h -= p * (std::log(p) / std::log(log_base));
  }
  return h;
}

inline BruteOracle brute_compute(std::size_t arity,
                                 const std::vector<std::vector<std::string>>& rows,
                                 double log_base) {
  BruteOracle oracle;
  oracle.arity = arity;
  oracle.log_base = log_base;
  oracle.marginal_counts.resize(arity);
  for (const auto& row : rows) {
    for (std::size_t a = 0; a < arity; ++a) {
      ++oracle.marginal_counts[a][row[a]];
    }
  }
  oracle.marginal_entropy.resize(arity);
  for (std::size_t a = 0; a < arity; ++a) {
    oracle.marginal_entropy[a] = brute_entropy(oracle.marginal_counts[a], log_base);
  }
  for (std::size_t i = 0; i + 1 < arity; ++i) {
    for (std::size_t j = i + 1; j < arity; ++j) {
      auto& table = oracle.joints[{i, j}];
      for (const auto& row : rows) {
        ++table[{row[i], row[j]}];
      }
    }
  }
  oracle.conditional.resize(arity * arity);
  for (std::size_t i = 0; i < arity; ++i) {
    for (std::size_t j = 0; j < arity; ++j) {
      if (i == j) {
        continue;
      }
      // group target counts by condition value
      std::map<std::string, std::map<std::string, std::uint64_t>> by_cond;
      for (const auto& row : rows) {
        ++by_cond[row[j]][row[i]];
      }
      auto& out = oracle.conditional[i * arity + j];
      for (const auto& [y, counts] : by_cond) {
        out[y] = brute_entropy(counts, log_base);
      }
    }
  }
  return oracle;
}

/// Compares a state against the brute oracle; returns human-readable
/// problems (empty = match). Counts must be exact, entropies within `tol`.
inline std::vector<std::string> diff_against_brute(const MiningState& state,
                                                   const BruteOracle& oracle,
                                                   double tol) {
  std::vector<std::string> problems;
  const std::size_t arity = state.arity();
  auto complain = [&problems](const std::string& msg) {
    if (problems.size() < 10) {
      problems.push_back(msg);
    }
  };
  if (arity != oracle.arity) {
    complain("arity mismatch");
    return problems;
  }
  for (AttrIndex a = 0; a < arity; ++a) {
    const auto& expected = oracle.marginal_counts[a];
    if (state.dict.domain_size(a) != expected.size()) {
      complain("attr " + std::to_string(a) + ": domain size " +
               std::to_string(state.dict.domain_size(a)) + " vs brute " +
               std::to_string(expected.size()));
      continue;
    }
    Count total = 0;
    for (ValueId x = 0; x < state.dict.domain_size(a); ++x) {
      const auto it = expected.find(state.dict.raw(a, x));
      const Count got = state.freq.marginal(a, x);
      total += got;
      if (it == expected.end() || it->second != got) {
        complain("attr " + std::to_string(a) + " value '" + state.dict.raw(a, x) +
                 "': count " + std::to_string(got));
      }
    }
    if (total != state.freq.n) {
      complain("attr " + std::to_string(a) + ": counts sum to " +
               std::to_string(total) + ", n = " + std::to_string(state.freq.n));
    }
    if (std::fabs(state.entropy.marginal[a] - oracle.marginal_entropy[a]) > tol) {
      std::ostringstream os;
      os << "H(attr " << a << ") = " << state.entropy.marginal[a] << " vs brute "
         << oracle.marginal_entropy[a];
      complain(os.str());
    }
  }
  for (AttrIndex i = 0; i + 1 < arity; ++i) {
    for (AttrIndex j = i + 1; j < arity; ++j) {
      const auto& expected = oracle.joints.at({i, j});
      const auto& table = state.freq.joints[pair_index(i, j, arity)];
      if (table.size() != expected.size()) {
        complain("joint {" + std::to_string(i) + "," + std::to_string(j) +
                 "}: " + std::to_string(table.size()) + " cells vs brute " +
                 std::to_string(expected.size()));
        continue;
      }
      for (const auto& [key, count] : table) {
        const auto it = expected.find(
            {state.dict.raw(i, key.first), state.dict.raw(j, key.second)});
        if (it == expected.end() || it->second != count) {
          complain("joint {" + std::to_string(i) + "," + std::to_string(j) +
                   "} cell (" + state.dict.raw(i, key.first) + "," +
                   state.dict.raw(j, key.second) + ")");
        }
      }
    }
  }
  for (AttrIndex i = 0; i < arity; ++i) {
    for (AttrIndex j = 0; j < arity; ++j) {
      if (i == j) {
        continue;
      }
      const auto& expected = oracle.conditional[i * arity + j];
      const auto& cache = state.entropy.conditional[ordered_index(i, j, arity)];
      if (cache.size() != expected.size()) {
        complain("conditional (" + std::to_string(i) + "|" + std::to_string(j) +
                 "): " + std::to_string(cache.size()) + " entries vs brute " +
                 std::to_string(expected.size()));
        continue;
      }
      for (const auto& [y, h] : cache) {
        const auto it = expected.find(state.dict.raw(j, y));
        if (it == expected.end()) {
          complain("conditional (" + std::to_string(i) + "|" + std::to_string(j) +
                   ") has unexpected value id " + std::to_string(y));
        } else if (std::fabs(h - it->second) > tol) {
          std::ostringstream os;
          os << "H(" << i << "|" << j << "=" << state.dict.raw(j, y) << ") = " << h
             << " vs brute " << it->second;
          complain(os.str());
        }
      }
    }
  }
  return problems;
}

inline std::string join_problems(const std::vector<std::string>& problems) {
  std::string out;
  for (const auto& p : problems) {
    out += p;
    out += "; ";
  }
  return out;
}

// -----------------------------------------------------------------------
// Seeded random streams (mt19937_64, independent of the library's
// SplitMix64 generator).
// -----------------------------------------------------------------------

struct StreamSpec {
  std::uint64_t seed = 0;
  std::size_t min_attrs = 3;
  std::size_t max_attrs = 6;
  std::uint32_t min_cardinality = 2;
  std::uint32_t max_cardinality = 20;
  std::size_t batches = 30;
  std::size_t min_rows = 1;
  std::size_t max_rows = 100;
};

struct TestStream {
  std::vector<std::string> names;
  std::vector<std::vector<std::vector<std::string>>> batches;
};

inline TestStream make_stream(const StreamSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  TestStream stream;
  const std::size_t arity = std::uniform_int_distribution<std::size_t>(
      spec.min_attrs, spec.max_attrs)(rng);
  std::vector<std::uint32_t> cards(arity);
  for (std::size_t a = 0; a < arity; ++a) {
    stream.names.push_back("attr" + std::to_string(a));
    cards[a] = std::uniform_int_distribution<std::uint32_t>(
        spec.min_cardinality, spec.max_cardinality)(rng);
  }
  for (std::size_t b = 0; b < spec.batches; ++b) {
    const std::size_t rows = std::uniform_int_distribution<std::size_t>(
        spec.min_rows, spec.max_rows)(rng);
    std::vector<std::vector<std::string>> batch(rows,
                                                std::vector<std::string>(arity));
    for (auto& row : batch) {
      for (std::size_t a = 0; a < arity; ++a) {
        row[a] = "v" + std::to_string(std::uniform_int_distribution<std::uint32_t>(
                           0, cards[a] - 1)(rng));
      }
    }
    stream.batches.push_back(std::move(batch));
  }
  return stream;
}

/// Runs the incremental path over a stream, invoking `visit(state,
/// rows_so_far, encoded_batches)` after every batch.
template <typename Visitor>
MiningState play_stream(const TestStream& stream, double log_base, Visitor visit) {
  Schema schema(stream.names);
  Dictionary dict(schema.arity());
  std::vector<Batch> encoded;
  std::vector<std::vector<std::string>> rows_so_far;

  Batch first = encode_batch(schema, dict, stream.batches.front());
  MiningState state = init_states(first, schema, dict, log_base);
  // init_states consumed copies; keep state's schema/dict authoritative
  encoded.push_back(std::move(first));
  for (const auto& row : stream.batches.front()) {
    rows_so_far.push_back(row);
  }
  visit(state, rows_so_far, encoded);

  for (std::size_t b = 1; b < stream.batches.size(); ++b) {
    Batch batch = encode_batch(state.schema, state.dict, stream.batches[b]);
    update_states(state, batch);
    encoded.push_back(std::move(batch));
    for (const auto& row : stream.batches[b]) {
      rows_so_far.push_back(row);
    }
    visit(state, rows_so_far, encoded);
  }
  return state;
}

}  // namespace igtest

#endif  // IGMINE_TESTS_SUPPORT_HPP
