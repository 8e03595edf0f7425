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

#include "igmine/relation.hpp"

#include <unordered_set>

namespace igmine {

Schema::Schema(std::vector<std::string> names) : names_(std::move(names)) {
  std::unordered_set<std::string_view> seen;
  for (const auto& n : names_) {
    if (n.empty()) {
      throw CsvError(1, "empty attribute name in header");
    }
    if (!seen.insert(n).second) {
      throw CsvError(1, "duplicate attribute name '" + n + "' in header");
    }
  }
}

AttrIndex Schema::index_of(std::string_view name) const {
  if (auto idx = find(name)) {
    return *idx;
  }
  throw UnknownAttribute(std::string(name));
}

std::optional<AttrIndex> Schema::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) {
      return static_cast<AttrIndex>(i);
    }
  }
  return std::nullopt;
}

ValueId Dictionary::intern(AttrIndex attr, std::string_view raw) {
  Table& t = tables_.at(attr);
  auto it = t.ids.find(std::string(raw));
  if (it != t.ids.end()) {
    return it->second;
  }
  const auto id = static_cast<ValueId>(t.values.size());
  t.values.emplace_back(raw);
  t.ids.emplace(t.values.back(), id);
  return id;
}

std::optional<ValueId> Dictionary::find(AttrIndex attr, std::string_view raw) const {
  const Table& t = tables_.at(attr);
  auto it = t.ids.find(std::string(raw));
  if (it == t.ids.end()) {
    return std::nullopt;
  }
  return it->second;
}

const std::string& Dictionary::raw(AttrIndex attr, ValueId id) const {
  const Table& t = tables_.at(attr);
  if (id >= t.values.size()) {
    throw UnknownValue("id " + std::to_string(id) + " of attribute #" +
                       std::to_string(attr));
  }
  return t.values[id];
}

bool Dictionary::operator==(const Dictionary& other) const {
  if (tables_.size() != other.tables_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < tables_.size(); ++i) {
    if (tables_[i].values != other.tables_[i].values) {
      return false;
    }
  }
  return true;
}

Batch encode_batch(const Schema& schema, Dictionary& dict,
                   const std::vector<std::vector<std::string>>& rows,
                   const std::string& null_token) {
  if (rows.empty()) {
    throw EmptyBatch();
  }
  const std::size_t arity = schema.arity();
  Batch batch;
  batch.columns.assign(arity, {});
  for (auto& col : batch.columns) {
    col.reserve(rows.size());
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != arity) {
      throw ArityMismatch(r, rows[r].size(), arity);
    }
    for (std::size_t a = 0; a < arity; ++a) {
      const std::string& cell = rows[r][a];
      const std::string_view raw = cell.empty() ? std::string_view(null_token)
                                                : std::string_view(cell);
      batch.columns[a].push_back(dict.intern(static_cast<AttrIndex>(a), raw));
    }
  }
  return batch;
}

std::vector<std::vector<std::string>> decode_batch(const Schema& schema,
                                                   const Dictionary& dict,
                                                   const Batch& batch) {
  const std::size_t arity = schema.arity();
  const std::size_t rows = static_cast<std::size_t>(batch.row_count());
  std::vector<std::vector<std::string>> out(rows, std::vector<std::string>(arity));
  for (std::size_t a = 0; a < arity; ++a) {
    const auto& col = batch.columns.at(a);
    for (std::size_t r = 0; r < rows; ++r) {
      out[r][a] = dict.raw(static_cast<AttrIndex>(a), col[r]);
    }
  }
  return out;
}

void concat_batch(Batch& base, const Batch& extra) {
  if (base.columns.empty()) {
    base = extra;
    return;
  }
  if (base.columns.size() != extra.columns.size()) {
    throw SchemaMismatch("batch arity " + std::to_string(extra.columns.size()) +
                         " vs " + std::to_string(base.columns.size()));
  }
  for (std::size_t a = 0; a < base.columns.size(); ++a) {
    base.columns[a].insert(base.columns[a].end(), extra.columns[a].begin(),
                           extra.columns[a].end());
  }
}

}  // namespace igmine
