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

#ifndef IGMINE_RELATION_HPP
#define IGMINE_RELATION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "igmine/errors.hpp"

namespace igmine {

using ValueId = std::uint32_t;
using Count = std::uint64_t;
using AttrIndex = std::uint32_t;

/// Default stand-in raw value for missing/empty CSV cells. It participates
/// in counts like any other value.
inline constexpr const char* kDefaultNullToken = "__NULL__";

/// Ordered attribute names, fixed at initialization. Names are unique and
/// non-empty; order is the CSV header order.
class Schema {
 public:
  Schema() = default;
  explicit Schema(std::vector<std::string> names);

  std::size_t arity() const { return names_.size(); }
  const std::string& name(AttrIndex i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }

  /// Resolves an attribute name; throws UnknownAttribute if absent.
  AttrIndex index_of(std::string_view name) const;
  std::optional<AttrIndex> find(std::string_view name) const;

  bool operator==(const Schema& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
};

/// Per-attribute interning table: raw string -> dense value id, assigned by
/// first appearance in the stream. Ids are stable and never reused.
class Dictionary {
 public:
  Dictionary() = default;
  explicit Dictionary(std::size_t arity) : tables_(arity) {}

  std::size_t arity() const { return tables_.size(); }
  std::size_t domain_size(AttrIndex attr) const { return tables_.at(attr).values.size(); }

  /// Returns the existing id for `raw`, or assigns the next id.
  ValueId intern(AttrIndex attr, std::string_view raw);

  std::optional<ValueId> find(AttrIndex attr, std::string_view raw) const;
  const std::string& raw(AttrIndex attr, ValueId id) const;

  bool operator==(const Dictionary& other) const;

 private:
  struct Table {
    std::vector<std::string> values;                       // id -> raw
    std::unordered_map<std::string, ValueId> ids;          // raw -> id
  };
  std::vector<Table> tables_;
};

/// Column-encoded append batch. All columns have identical length and every
/// id is valid in the dictionary the batch was encoded against.
struct Batch {
  std::vector<std::vector<ValueId>> columns;  // [attr][row]

  Count row_count() const {
    return columns.empty() ? 0 : static_cast<Count>(columns.front().size());
  }
};

/// Encodes string rows into a column batch, extending `dict` with any new
/// values. Empty cells are replaced by `null_token` before interning.
/// Throws EmptyBatch for zero rows and ArityMismatch(row) on bad width.
Batch encode_batch(const Schema& schema, Dictionary& dict,
                   const std::vector<std::vector<std::string>>& rows,
                   const std::string& null_token = kDefaultNullToken);

/// Maps a batch back to raw string rows.
std::vector<std::vector<std::string>> decode_batch(const Schema& schema,
                                                   const Dictionary& dict,
                                                   const Batch& batch);

/// Appends `extra`'s rows to `base` (same arity required).
void concat_batch(Batch& base, const Batch& extra);

}  // namespace igmine

#endif  // IGMINE_RELATION_HPP
