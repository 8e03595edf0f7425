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

#include "igmine/snapshot.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace igmine {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_count(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%" PRIu64, v);
  return buf;
}

void append_json_string(std::string& out, std::string_view s) {
  out.push_back('"');
  for (unsigned char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\b':
        out += "\\b";
        break;
      case '\f':
        out += "\\f";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out.push_back(static_cast<char>(c));
        }
    }
  }
  out.push_back('"');
}

template <typename T>
T require(const nlohmann::json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) {
    throw CorruptSnapshot(std::string("missing key '") + key + "'");
  }
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw CorruptSnapshot(std::string("key '") + key + "' has the wrong type");
  }
}

std::pair<AttrIndex, AttrIndex> parse_pair_key(const std::string& key, char sep,
                                               std::size_t arity) {
  const auto pos = key.find(sep);
  if (pos == std::string::npos || pos == 0 || pos + 1 >= key.size()) {
    throw CorruptSnapshot("malformed pair key '" + key + "'");
  }
  unsigned long i = 0;
  unsigned long j = 0;
  try {
    std::size_t used = 0;
    i = std::stoul(key.substr(0, pos), &used);
    if (used != pos) {
      throw std::invalid_argument(key);
    }
    j = std::stoul(key.substr(pos + 1), &used);
    if (used != key.size() - pos - 1) {
      throw std::invalid_argument(key);
    }
  } catch (const std::exception&) {
    throw CorruptSnapshot("malformed pair key '" + key + "'");
  }
  if (i >= arity || j >= arity) {
    throw CorruptSnapshot("pair key '" + key + "' out of range");
  }
  return {static_cast<AttrIndex>(i), static_cast<AttrIndex>(j)};
}

void check_consistency(const MiningState& state) {
  const std::size_t arity = state.arity();
  for (AttrIndex a = 0; a < arity; ++a) {
    Count sum = 0;
    for (Count c : state.freq.marginals[a]) {
      sum += c;
    }
    if (sum != state.freq.n) {
      throw CorruptSnapshot("marginal counts of '" + state.schema.name(a) +
                            "' sum to " + std::to_string(sum) + ", n is " +
                            std::to_string(state.freq.n));
    }
  }
  for (AttrIndex i = 0; i + 1 < arity; ++i) {
    for (AttrIndex j = i + 1; j < arity; ++j) {
      const JointTable& table = state.freq.joints[pair_index(i, j, arity)];
      std::vector<Count> row_sum(state.dict.domain_size(i), 0);
      std::vector<Count> col_sum(state.dict.domain_size(j), 0);
      for (const auto& [key, count] : table) {
        if (count == 0) {
          throw CorruptSnapshot("zero joint count stored for pair " +
                                std::to_string(i) + "," + std::to_string(j));
        }
        row_sum[key.first] += count;
        col_sum[key.second] += count;
      }
      for (ValueId x = 0; x < row_sum.size(); ++x) {
        if (row_sum[x] != state.freq.marginal(i, x)) {
          throw CorruptSnapshot("joint row sums of pair " + std::to_string(i) +
                                "," + std::to_string(j) + " disagree with f_" +
                                state.schema.name(i) + " at id " +
                                std::to_string(x));
        }
      }
      for (ValueId y = 0; y < col_sum.size(); ++y) {
        if (col_sum[y] != state.freq.marginal(j, y)) {
          throw CorruptSnapshot("joint column sums of pair " + std::to_string(i) +
                                "," + std::to_string(j) + " disagree with f_" +
                                state.schema.name(j) + " at id " +
                                std::to_string(y));
        }
      }
    }
  }
  // Conditional caches must cover exactly the supported condition values.
  for (AttrIndex i = 0; i < arity; ++i) {
    for (AttrIndex j = 0; j < arity; ++j) {
      if (i == j) {
        continue;
      }
      const auto& cache = state.entropy.conditional[ordered_index(i, j, arity)];
      std::size_t expected = 0;
      for (Count c : state.freq.marginals[j]) {
        expected += c > 0 ? 1 : 0;
      }
      if (cache.size() != expected) {
        throw CorruptSnapshot("conditional entropy '" + std::to_string(i) + "|" +
                              std::to_string(j) + "' has " +
                              std::to_string(cache.size()) + " entries, expected " +
                              std::to_string(expected));
      }
      const double bound =
          std::log(static_cast<double>(state.dict.domain_size(i)) + 1.0) /
              std::log(state.log_base) +
          1e-6;
      for (const auto& [y, h] : cache) {
        if (state.freq.marginal(j, y) == 0) {
          throw CorruptSnapshot("conditional entropy for unsupported value id " +
                                std::to_string(y));
        }
        if (!std::isfinite(h) || h < -1e-6 || h > bound) {
          throw CorruptSnapshot("conditional entropy out of range for '" +
                                std::to_string(i) + "|" + std::to_string(j) +
                                "' at id " + std::to_string(y));
        }
      }
    }
  }
}

}  // namespace

std::string to_canonical_json(const MiningState& state) {
  const std::size_t arity = state.arity();
  std::string out;
  out.reserve(4096);
  out += "{\n";

  out += "\"attributes\":[";
  for (AttrIndex a = 0; a < arity; ++a) {
    if (a) {
      out.push_back(',');
    }
    out += "{\"name\":";
    append_json_string(out, state.schema.name(a));
    out += ",\"values\":[";
    const std::size_t dom = state.dict.domain_size(a);
    for (ValueId v = 0; v < dom; ++v) {
      if (v) {
        out.push_back(',');
      }
      append_json_string(out, state.dict.raw(a, v));
    }
    out += "]}";
  }
  out += "],\n";

  out += "\"batch_count\":" + fmt_count(state.batch_count) + ",\n";

  out += "\"conditional_entropy\":{";
  {
    // Ordered-pair keys "i|j" in lexicographic order, matching sorted-key
    // canonical form.
    std::vector<std::pair<std::string, std::size_t>> keys;
    for (AttrIndex i = 0; i < arity; ++i) {
      for (AttrIndex j = 0; j < arity; ++j) {
        if (i != j) {
          keys.emplace_back(std::to_string(i) + "|" + std::to_string(j),
                            ordered_index(i, j, arity));
        }
      }
    }
    std::sort(keys.begin(), keys.end());
    bool first = true;
    for (const auto& [key, oidx] : keys) {
      if (!first) {
        out.push_back(',');
      }
      first = false;
      append_json_string(out, key);
      out += ":[";
      bool first_entry = true;
      for (const auto& [y, h] : state.entropy.conditional[oidx]) {
        if (!first_entry) {
          out.push_back(',');
        }
        first_entry = false;
        out += "[" + fmt_count(y) + "," + fmt_double(h) + "]";
      }
      out += "]";
    }
  }
  out += "},\n";

  out += "\"joints\":{";
  {
    std::vector<std::pair<std::string, std::size_t>> keys;
    for (AttrIndex i = 0; i + 1 < arity; ++i) {
      for (AttrIndex j = i + 1; j < arity; ++j) {
        keys.emplace_back(std::to_string(i) + "," + std::to_string(j),
                          pair_index(i, j, arity));
      }
    }
    std::sort(keys.begin(), keys.end());
    bool first = true;
    for (const auto& [key, pidx] : keys) {
      if (!first) {
        out.push_back(',');
      }
      first = false;
      append_json_string(out, key);
      out += ":[";
      bool first_entry = true;
      for (const auto& [cell, count] : state.freq.joints[pidx]) {
        if (!first_entry) {
          out.push_back(',');
        }
        first_entry = false;
        out += "[" + fmt_count(cell.first) + "," + fmt_count(cell.second) + "," +
               fmt_count(count) + "]";
      }
      out += "]";
    }
  }
  out += "},\n";

  out += "\"log_base\":" + fmt_double(state.log_base) + ",\n";

  out += "\"marginal_entropy\":[";
  for (std::size_t a = 0; a < arity; ++a) {
    if (a) {
      out.push_back(',');
    }
    out += fmt_double(state.entropy.marginal[a]);
  }
  out += "],\n";

  out += "\"marginals\":[";
  for (std::size_t a = 0; a < arity; ++a) {
    if (a) {
      out.push_back(',');
    }
    out.push_back('[');
    const auto& m = state.freq.marginals[a];
    for (std::size_t v = 0; v < m.size(); ++v) {
      if (v) {
        out.push_back(',');
      }
      out += fmt_count(m[v]);
    }
    out.push_back(']');
  }
  out += "],\n";

  out += "\"n\":" + fmt_count(state.freq.n) + ",\n";
  out += "\"version\":" + fmt_count(kSnapshotVersion) + "\n";
  out += "}\n";
  return out;
}

MiningState from_json_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw CorruptSnapshot(std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw CorruptSnapshot("document is not an object");
  }
  const auto version = require<std::uint64_t>(doc, "version");
  if (version != kSnapshotVersion) {
    throw VersionMismatch(version, kSnapshotVersion);
  }

  MiningState state;
  state.log_base = require<double>(doc, "log_base");
  if (!(state.log_base > 0.0) || state.log_base == 1.0 ||
      !std::isfinite(state.log_base)) {
    throw CorruptSnapshot("invalid log base");
  }
  state.freq.n = require<Count>(doc, "n");
  state.batch_count = require<std::uint64_t>(doc, "batch_count");

  const auto attrs = require<nlohmann::json>(doc, "attributes");
  if (!attrs.is_array() || attrs.empty()) {
    throw CorruptSnapshot("'attributes' must be a non-empty array");
  }
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> values;
  for (const auto& a : attrs) {
    if (!a.is_object()) {
      throw CorruptSnapshot("attribute entries must be objects");
    }
    names.push_back(require<std::string>(a, "name"));
    values.push_back(require<std::vector<std::string>>(a, "values"));
  }
  try {
    state.schema = Schema(names);
  } catch (const Error& e) {
    throw CorruptSnapshot(e.what());
  }
  const std::size_t arity = names.size();
  state.dict = Dictionary(arity);
  for (AttrIndex a = 0; a < arity; ++a) {
    for (const auto& raw : values[a]) {
      const ValueId id = state.dict.intern(a, raw);
      if (id + 1 != state.dict.domain_size(a)) {
        throw CorruptSnapshot("duplicate interned value '" + raw +
                              "' for attribute '" + names[a] + "'");
      }
    }
  }

  const auto marginals = require<std::vector<std::vector<Count>>>(doc, "marginals");
  if (marginals.size() != arity) {
    throw CorruptSnapshot("'marginals' arity disagrees with 'attributes'");
  }
  for (AttrIndex a = 0; a < arity; ++a) {
    if (marginals[a].size() != state.dict.domain_size(a)) {
      throw CorruptSnapshot("marginal table of '" + names[a] +
                            "' disagrees with its value list");
    }
  }
  state.freq.marginals = marginals;

  const auto marginal_entropy = require<std::vector<double>>(doc, "marginal_entropy");
  if (marginal_entropy.size() != arity) {
    throw CorruptSnapshot("'marginal_entropy' arity disagrees with 'attributes'");
  }
  for (double h : marginal_entropy) {
    if (!std::isfinite(h)) {
      throw CorruptSnapshot("non-finite marginal entropy");
    }
  }
  state.entropy.marginal = marginal_entropy;

  state.freq.joints.resize(pair_count(arity));
  const auto joints = require<nlohmann::json>(doc, "joints");
  if (!joints.is_object()) {
    throw CorruptSnapshot("'joints' must be an object");
  }
  std::size_t joint_keys = 0;
  for (const auto& [key, entries] : joints.items()) {
    const auto [i, j] = parse_pair_key(key, ',', arity);
    if (i >= j) {
      throw CorruptSnapshot("joint key '" + key + "' must have i < j");
    }
    ++joint_keys;
    if (!entries.is_array()) {
      throw CorruptSnapshot("joint entries for '" + key + "' must be an array");
    }
    JointTable& table = state.freq.joints[pair_index(i, j, arity)];
    for (const auto& e : entries) {
      if (!e.is_array() || e.size() != 3) {
        throw CorruptSnapshot("joint cells must be [x,y,count] triples");
      }
      const auto x = e[0].get<Count>();
      const auto y = e[1].get<Count>();
      const auto count = e[2].get<Count>();
      if (x >= state.dict.domain_size(i) || y >= state.dict.domain_size(j)) {
        throw CorruptSnapshot("joint cell ids out of range in '" + key + "'");
      }
      if (count == 0) {
        throw CorruptSnapshot("zero joint count in '" + key + "'");
      }
      if (!table
               .emplace(std::make_pair(static_cast<ValueId>(x),
                                       static_cast<ValueId>(y)),
                        count)
               .second) {
        throw CorruptSnapshot("duplicate joint cell in '" + key + "'");
      }
    }
  }
  if (joint_keys != pair_count(arity)) {
    throw CorruptSnapshot("'joints' must hold every attribute pair once");
  }

  state.entropy.conditional.resize(arity * arity);
  const auto conditional = require<nlohmann::json>(doc, "conditional_entropy");
  if (!conditional.is_object()) {
    throw CorruptSnapshot("'conditional_entropy' must be an object");
  }
  std::size_t cond_keys = 0;
  for (const auto& [key, entries] : conditional.items()) {
    const auto [i, j] = parse_pair_key(key, '|', arity);
    if (i == j) {
      throw CorruptSnapshot("conditional key '" + key + "' must have i != j");
    }
    ++cond_keys;
    if (!entries.is_array()) {
      throw CorruptSnapshot("conditional entries for '" + key +
                            "' must be an array");
    }
    auto& cache = state.entropy.conditional[ordered_index(i, j, arity)];
    for (const auto& e : entries) {
      if (!e.is_array() || e.size() != 2) {
        throw CorruptSnapshot("conditional cells must be [y,H] pairs");
      }
      const auto y = e[0].get<Count>();
      const auto h = e[1].get<double>();
      if (y >= state.dict.domain_size(j)) {
        throw CorruptSnapshot("conditional value id out of range in '" + key + "'");
      }
      if (!cache.emplace(static_cast<ValueId>(y), h).second) {
        throw CorruptSnapshot("duplicate conditional cell in '" + key + "'");
      }
    }
  }
  if (cond_keys != arity * (arity - 1)) {
    throw CorruptSnapshot("'conditional_entropy' must hold every ordered pair once");
  }

  check_consistency(state);
  return state;
}

void save_snapshot(const MiningState& state, const std::filesystem::path& path) {
  const std::string doc = to_canonical_json(state);
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("cannot open '" + tmp.string() + "' for writing");
    }
    out.write(doc.data(), static_cast<std::streamsize>(doc.size()));
    out.flush();
    if (!out) {
      throw IoError("failed writing '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot replace '" + path.string() + "': " + ec.message());
  }
}

MiningState load_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path.string() + "' for reading");
  }
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw IoError("failed reading '" + path.string() + "'");
  }
  return from_json_text(text);
}

}  // namespace igmine
