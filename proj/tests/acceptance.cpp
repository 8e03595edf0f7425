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

// Acceptance suite: one pass/fail line per criterion, exit 1 on any failure.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "igmine/bench.hpp"
#include "igmine/mining.hpp"
#include "igmine/snapshot.hpp"
#include "igmine/synthgen.hpp"
#include "support.hpp"

using namespace igtest;

namespace {

namespace fs = std::filesystem;

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      ok = false;
      if (detail.tellp() < 2000) {
        detail << "FAILED: " << what << "; ";
      }
    }
  }
  void note(const std::string& what) { detail << what << "; "; }
};

// ---------------------------------------------------------------------
// 1. Oracle equivalence of the incremental update rules.
// ---------------------------------------------------------------------
void criterion_oracle_equivalence(Check& check) {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    StreamSpec spec;
    spec.seed = seed;
    spec.min_attrs = 5;
    spec.max_attrs = 8;
    spec.min_cardinality = 2;
    spec.max_cardinality = 25;
    spec.batches = 50;
    spec.min_rows = 1;
    spec.max_rows = 200;
    const TestStream stream = make_stream(spec);
    play_stream(stream, 2.0,
                [&](MiningState& state, const auto&, const auto& encoded) {
                  const MiningState oracle = recompute_states(
                      state.schema, state.dict, encoded, state.log_base);
                  const DriftReport report = compare_states(state, oracle, 1e-9);
                  worst = std::max(worst, report.max_diff());
                  check.require(report.pass(), "seed " + std::to_string(seed) +
                                                   ", batch " +
                                                   std::to_string(state.batch_count) +
                                                   ": " + report.summary());
                });
  }
  std::ostringstream os;
  os << "20 streams x 50 batches, max |dH| = " << worst;
  check.note(os.str());
}

// ---------------------------------------------------------------------
// 2. Efficiency per Definition 1: cell touches independent of n.
// ---------------------------------------------------------------------
Batch uniform_batch(std::size_t arity, std::uint32_t cardinality, Count rows,
                    std::uint64_t seed) {
  SplitMix64 rng(seed);
  Batch batch;
  batch.columns.assign(arity, {});
  for (auto& col : batch.columns) {
    col.reserve(rows);
  }
  for (Count r = 0; r < rows; ++r) {
    for (std::size_t a = 0; a < arity; ++a) {
      batch.columns[a].push_back(
          static_cast<ValueId>(rng.next_below(cardinality)));
    }
  }
  return batch;
}

void criterion_efficiency(Check& check) {
  constexpr std::size_t kArity = 5;
  constexpr std::uint32_t kCardinality = 8;
  std::vector<std::string> names;
  for (std::size_t a = 0; a < kArity; ++a) {
    names.push_back("a" + std::to_string(a));
  }
  Schema schema(names);
  Dictionary dict(kArity);
  for (AttrIndex a = 0; a < kArity; ++a) {
    for (std::uint32_t v = 0; v < kCardinality; ++v) {
      dict.intern(a, gen_value_name(v));
    }
  }
  MiningState small = init_states(uniform_batch(kArity, kCardinality, 10'000, 1),
                                  schema, dict, 2.0);
  MiningState large = init_states(
      uniform_batch(kArity, kCardinality, 1'000'000, 2), schema, dict, 2.0);

  const Batch probe = uniform_batch(kArity, kCardinality, 100, 3);
  small.touches = 0;
  update_states(small, probe);
  large.touches = 0;
  update_states(large, probe);

  const auto t1 = static_cast<double>(small.touches);
  const auto t2 = static_cast<double>(large.touches);
  const double rel = std::fabs(t1 - t2) / std::max(t1, t2);
  std::ostringstream os;
  os << "touches at n=10k: " << small.touches << ", at n=1M: " << large.touches
     << ", relative diff " << rel * 100.0 << "%";
  check.note(os.str());
  check.require(rel < 0.10, os.str());
}

// ---------------------------------------------------------------------
// 3. Benchmark reproduction: constant-time incremental, linear overhaul.
// ---------------------------------------------------------------------
void criterion_benchmark(Check& check) {
  BenchConfig config;
  config.rows_init = 1000;
  config.batch_size = 500;
  config.batches = 200;
  config.seed = 42;
  config.attributes = 5;
  config.cardinality = 8;
  config.repetitions = 3;

  config.mode = BenchMode::incremental;
  const BenchResult inc = run_bench(config);
  {
    std::ostringstream os;
    os << "incremental normalized slope " << inc.normalized_slope_per_10k_rows * 100.0
       << "% per 10k rows (mean batch " << inc.mean_seconds * 1e3 << " ms)";
    check.note(os.str());
    check.require(inc.normalized_slope_per_10k_rows < 0.001, os.str());
  }

  config.mode = BenchMode::overhaul;
  const BenchResult ovh = run_bench(config);
  {
    const double ratio = ovh.last_batch_seconds / ovh.first_batch_seconds;
    std::ostringstream os;
    os << "overhaul final/first ratio " << ratio;
    check.note(os.str());
    check.require(ratio >= 5.0, os.str());
  }
}

// ---------------------------------------------------------------------
// 4. Batch-size linearity of the incremental update.
// ---------------------------------------------------------------------
void criterion_batch_size_linearity(Check& check) {
  std::vector<double> sizes;
  std::vector<double> means;
  for (const std::uint64_t batch_size : {100, 200, 400, 800}) {
    BenchConfig config;
    config.rows_init = 1000;
    config.batch_size = batch_size;
    config.batches = 30;
    config.seed = 7;
    config.attributes = 5;
    config.cardinality = 8;
    config.repetitions = 3;
    const BenchResult result = run_bench(config);
    sizes.push_back(static_cast<double>(batch_size));
    means.push_back(result.mean_seconds);
  }
  const LinearFit fit = linear_fit(sizes, means);
  std::ostringstream os;
  os << "mean batch time vs delta-n R^2 = " << fit.r_squared;
  check.note(os.str());
  check.require(fit.r_squared >= 0.95, os.str());
}

// ---------------------------------------------------------------------
// 5. Information-theory invariants on every tested state.
// ---------------------------------------------------------------------
void criterion_invariants(Check& check) {
  for (std::uint64_t seed = 100; seed < 105; ++seed) {
    StreamSpec spec;
    spec.seed = seed;
    spec.min_attrs = 5;
    spec.max_attrs = 7;
    spec.max_cardinality = 12;
    spec.batches = 20;
    spec.max_rows = 100;
    const TestStream stream = make_stream(spec);
    play_stream(stream, 2.0, [&](MiningState& state, const auto&, const auto&) {
      const std::size_t arity = state.arity();
      for (AttrIndex a = 0; a < arity; ++a) {
        std::size_t support = 0;
        for (Count c : state.freq.marginals[a]) {
          support += c > 0 ? 1 : 0;
        }
        const double h = state.entropy.marginal[a];
        check.require(h >= -1e-9 &&
                          h <= std::log2(static_cast<double>(support)) + 1e-9,
                      "marginal entropy bound");
      }
      for (AttrIndex i = 0; i < arity; ++i) {
        for (AttrIndex j = 0; j < arity; ++j) {
          if (i == j) {
            continue;
          }
          for (const auto& [y, h] :
               state.entropy.conditional[ordered_index(i, j, arity)]) {
            const auto support = conditional_support(state, i, j, y).size();
            check.require(h >= -1e-9 &&
                              h <= std::log2(static_cast<double>(support)) + 1e-9,
                          "conditional entropy bound");
          }
          const double mi = mutual_information(state, i, j);
          check.require(mi >= -1e-9, "MI nonnegativity");
          check.require(
              std::fabs(mi - mutual_information(state, j, i)) <= 1e-9,
              "MI symmetry");
        }
      }
      for (const auto& cell : top_k(state, std::nullopt, 1u << 24)) {
        check.require(cell.ig <= state.entropy.marginal[cell.target] + 1e-12,
                      "ig <= H(target)");
      }
    });
  }
  check.note("5 streams x 20 batches, all bounds held");
}

// ---------------------------------------------------------------------
// 6. Planted-dependency detection.
// ---------------------------------------------------------------------
void criterion_planted(Check& check) {
  const std::vector<double> strengths = {0.25, 0.5, 0.75, 1.0};
  std::vector<double> mean_ig(strengths.size(), 0.0);
  for (std::size_t s = 0; s < strengths.size(); ++s) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      GenConfig config;
      config.seed = seed;
      config.rows = 2000;
      config.attributes = {{"A", 4}, {"B", 5}, {"C", 3}, {"D", 6}};
      config.plants.push_back({1, 2, 0, 1, strengths[s]});
      const auto rows = generate_rows(config);
      const MiningState state = make_state({"A", "B", "C", "D"}, rows);
      const ValueId y = state.dict.find(1, "v2").value();
      const double planted_ig = information_gain(state, 0, 1, y);
      mean_ig[s] += planted_ig / 5.0;

      if (strengths[s] == 1.0) {
        check.require(std::fabs(planted_ig - state.entropy.marginal[0]) <= 1e-9,
                      "planted ig equals H(target) at strength 1");
        // top-ranked among every cell conditioned on B = v2
        for (AttrIndex i = 0; i < 4; ++i) {
          if (i == 1 || i == 0) {
            continue;
          }
          check.require(information_gain(state, i, 1, y) < planted_ig,
                        "planted cell outranks other targets for B=v2");
        }
        // and strictly above every other cell of the same cond attribute
        for (const auto& cell : top_k(state, std::nullopt, 1u << 24)) {
          if (cell.cond_attr == 1 && !(cell.target == 0 && cell.cond_value == y)) {
            check.require(cell.ig < planted_ig,
                          "planted cell outranks unplanted cells of B");
          }
        }
      }
    }
  }
  std::ostringstream os;
  os << "mean planted ig by strength:";
  for (std::size_t s = 0; s < strengths.size(); ++s) {
    os << " " << strengths[s] << "->" << mean_ig[s];
    if (s > 0) {
      check.require(mean_ig[s] >= mean_ig[s - 1] - 1e-12,
                    "planted ig non-decreasing in strength");
    }
  }
  check.note(os.str());
}

// ---------------------------------------------------------------------
// 7. Hand-checkable fixtures.
// ---------------------------------------------------------------------
void criterion_fixtures(Check& check) {
  MiningState state = fixture_ab();
  check.require(std::fabs(state.entropy.marginal[0] - 1.0) <= 1e-7, "H(A) = 1");
  const auto& cond = state.entropy.conditional[ordered_index(0, 1, 2)];
  check.require(std::fabs(cond.at(0) - 0.9182958) <= 1e-7,
                "H(A|B=y) = 0.9182958");
  check.require(std::fabs(information_gain(state, 0, 1, 1) - 1.0) <= 1e-7,
                "IG_A(B=z) = 1");
  check.require(std::fabs(mutual_information(state, 0, 1) - 0.3112781) <= 1e-7,
                "MI(A;B) = 0.3112781");

  // append (b, y): case-3 update of H(A|B=y)
  const Batch batch = encode_batch(state.schema, state.dict, {{"b", "y"}});
  update_states(state, batch);
  check.require(std::fabs(cond.at(0) - 1.0) <= 1e-9,
                "H'(A|B=y) = 1 via the case-3 path");
  check.note("all fixture values within tolerance");
}

// ---------------------------------------------------------------------
// 8. Persistence: exact round-trips, mid-stream boundary, canonical bytes.
// ---------------------------------------------------------------------
void criterion_persistence(Check& check) {
  const fs::path dir = fs::temp_directory_path() / "igmine_acceptance";
  fs::create_directories(dir);
  const fs::path path = dir / "state.json";

  StreamSpec spec;
  spec.seed = 2024;
  spec.min_attrs = 5;
  spec.max_attrs = 6;
  spec.max_cardinality = 15;
  spec.batches = 30;
  spec.max_rows = 120;
  const TestStream stream = make_stream(spec);

  // Uninterrupted run for reference.
  const MiningState full =
      play_stream(stream, 2.0, [](MiningState&, const auto&, const auto&) {});

  // load(save(s)) == s at tolerance zero.
  save_snapshot(full, path);
  const MiningState loaded = load_snapshot(path);
  const DriftReport round_trip = compare_states(full, loaded, 0.0);
  check.require(round_trip.pass() && round_trip.max_diff() == 0.0,
                "round-trip at tolerance 0: " + round_trip.summary());

  // Mid-stream save/load boundary, then oracle equivalence to the end.
  Schema schema(stream.names);
  Dictionary dict(schema.arity());
  Batch first = encode_batch(schema, dict, stream.batches.front());
  MiningState state = init_states(first, schema, dict, 2.0);
  std::vector<Batch> encoded;
  encoded.push_back(std::move(first));
  for (std::size_t b = 1; b < stream.batches.size(); ++b) {
    if (b == 15) {
      save_snapshot(state, path);
      state = load_snapshot(path);
    }
    Batch batch = encode_batch(state.schema, state.dict, stream.batches[b]);
    update_states(state, batch);
    encoded.push_back(std::move(batch));
    const MiningState oracle =
        recompute_states(state.schema, state.dict, encoded, state.log_base);
    const DriftReport report = compare_states(state, oracle, 1e-9);
    check.require(report.pass(),
                  "oracle equivalence across a save/load boundary: " +
                      report.summary());
  }
  const DriftReport boundary = compare_states(state, full, 0.0);
  check.require(boundary.pass(),
                "interrupted run equals uninterrupted run: " + boundary.summary());

  // Canonical documents: byte-identical across runs and across rebuilds.
  const MiningState rebuilt =
      play_stream(stream, 2.0, [](MiningState&, const auto&, const auto&) {});
  check.require(to_canonical_json(full) == to_canonical_json(rebuilt),
                "independently rebuilt state serializes to identical bytes");
  save_snapshot(full, path);
  std::ifstream in1(path, std::ios::binary);
  const std::string bytes1((std::istreambuf_iterator<char>(in1)),
                           std::istreambuf_iterator<char>());
  save_snapshot(full, path);
  std::ifstream in2(path, std::ios::binary);
  const std::string bytes2((std::istreambuf_iterator<char>(in2)),
                           std::istreambuf_iterator<char>());
  check.require(!bytes1.empty() && bytes1 == bytes2,
                "repeated saves produce identical files");
  check.note("round-trip, boundary and canonical-bytes checks held");
}

struct Criterion {
  int number;
  std::string title;
  std::function<void(Check&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "oracle equivalence of incremental updates", criterion_oracle_equivalence},
      {2, "cell touches independent of relation size", criterion_efficiency},
      {3, "constant-time incremental vs linear overhaul", criterion_benchmark},
      {4, "batch time linear in batch size", criterion_batch_size_linearity},
      {5, "information-theory invariants", criterion_invariants},
      {6, "planted-dependency detection", criterion_planted},
      {7, "hand-checkable fixtures", criterion_fixtures},
      {8, "persistence and canonical snapshots", criterion_persistence},
  };

  bool all_ok = true;
  for (const auto& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Check check;
    try {
      criterion.run(check);
    } catch (const std::exception& e) {
      check.ok = false;
      check.detail << "exception: " << e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::printf("[%s] criterion %d: %s (%.1fs) - %s\n",
                check.ok ? "PASS" : "FAIL", criterion.number,
                criterion.title.c_str(), seconds, check.detail.str().c_str());
    std::fflush(stdout);
    all_ok = all_ok && check.ok;
  }
  return all_ok ? 0 : 1;
}
