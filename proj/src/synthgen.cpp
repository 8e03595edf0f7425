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

#include "igmine/synthgen.hpp"

#include "igmine/csv.hpp"

namespace igmine {

namespace {

constexpr std::uint64_t kColumnSeedStride = 0x9e3779b97f4a7c15ULL;

void validate(const GenConfig& config) {
  if (config.rows == 0) {
    throw BadConfig("rows must be >= 1");
  }
  if (config.attributes.empty()) {
    throw BadConfig("at least one attribute is required");
  }
  for (const auto& [name, card] : config.attributes) {
    if (name.empty()) {
      throw BadConfig("attribute names must be non-empty");
    }
    if (card < 2) {
      throw BadConfig("attribute '" + name + "' needs cardinality >= 2");
    }
  }
  const std::size_t arity = config.attributes.size();
  for (const auto& plant : config.plants) {
    if (plant.source_attr >= arity || plant.target_attr >= arity) {
      throw BadConfig("plant attribute index out of range");
    }
    if (plant.source_attr == plant.target_attr) {
      throw BadConfig("plant source and target attributes must differ");
    }
    if (plant.source_value >= config.attributes[plant.source_attr].second ||
        plant.target_value >= config.attributes[plant.target_attr].second) {
      throw BadConfig("plant value index out of range");
    }
    if (!(plant.strength > 0.0) || plant.strength > 1.0) {
      throw BadConfig("plant strength must be in (0, 1]");
    }
  }
}

}  // namespace

std::string gen_value_name(std::uint32_t v) { return "v" + std::to_string(v); }

std::vector<std::vector<std::string>> generate_rows(const GenConfig& config) {
  validate(config);
  const std::size_t arity = config.attributes.size();

  std::vector<SplitMix64> column_streams;
  column_streams.reserve(arity);
  for (std::size_t k = 0; k < arity; ++k) {
    column_streams.emplace_back(config.seed + k * kColumnSeedStride);
  }
  SplitMix64 plant_stream(config.seed + arity * kColumnSeedStride);

  // Value indices are drawn per column, then plants are applied in config
  // order; a plant decision consumes one double per rule per row whether
  // or not the rule fires, keeping stream positions data-independent.
  std::vector<std::vector<std::string>> rows(
      config.rows, std::vector<std::string>(arity));
  std::vector<std::uint32_t> tuple(arity);
  for (std::uint64_t r = 0; r < config.rows; ++r) {
    for (std::size_t k = 0; k < arity; ++k) {
      tuple[k] = static_cast<std::uint32_t>(
          column_streams[k].next_below(config.attributes[k].second));
    }
    for (const auto& plant : config.plants) {
      const double u = plant_stream.next_double();
      if (tuple[plant.source_attr] == plant.source_value && u < plant.strength) {
        tuple[plant.target_attr] = plant.target_value;
      }
    }
    for (std::size_t k = 0; k < arity; ++k) {
      rows[r][k] = gen_value_name(tuple[k]);
    }
  }
  return rows;
}

void write_generated_csv(const GenConfig& config, std::ostream& os) {
  const auto rows = generate_rows(config);
  os << "# generator: splitmix64 seed=" << config.seed
     << " column-seed-stride=0x9e3779b97f4a7c15\n";
  std::vector<std::string> header;
  header.reserve(config.attributes.size());
  for (const auto& [name, card] : config.attributes) {
    header.push_back(name);
  }
  write_csv_row(os, header);
  for (const auto& row : rows) {
    write_csv_row(os, row);
  }
}

}  // namespace igmine
