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

#ifndef IGMINE_SYNTHGEN_HPP
#define IGMINE_SYNTHGEN_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "igmine/relation.hpp"

namespace igmine {

/// SplitMix64 (Steele, Lea & Flood; the java.util.SplittableRandom mixer).
/// Chosen because the whole generator fits in a dozen lines of any
/// language, so the same seed reproduces byte-identical corpora across
/// reimplementations.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound) by modulo; bias is negligible for the small
  /// cardinalities generated here and keeps the procedure trivially
  /// respecifiable.
  std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

/// Whenever A_source == source_value is drawn, A_target is overwritten
/// with target_value with probability `strength`.
struct PlantRule {
  AttrIndex source_attr = 0;
  ValueId source_value = 0;
  AttrIndex target_attr = 0;
  ValueId target_value = 0;
  double strength = 1.0;
};

struct GenConfig {
  std::uint64_t seed = 0;
  std::uint64_t rows = 0;
  std::vector<std::pair<std::string, std::uint32_t>> attributes;  // (name, cardinality)
  std::vector<PlantRule> plants;
};

/// Raw value string for value index v: "v<index>".
std::string gen_value_name(std::uint32_t v);

/// Generates `rows` string tuples. Column k draws from SplitMix64 seeded
/// with seed + k * 0x9e3779b97f4a7c15; plant decisions draw one double per
/// (row, rule) from a dedicated stream at column index arity. Throws
/// BadConfig on cardinality < 2, bad plant indices, or strength outside
/// (0, 1].
std::vector<std::vector<std::string>> generate_rows(const GenConfig& config);

/// Writes the generated relation as CSV: a '#' provenance comment naming
/// the PRNG and seed, the header row, then the data rows.
void write_generated_csv(const GenConfig& config, std::ostream& os);

}  // namespace igmine

#endif  // IGMINE_SYNTHGEN_HPP
