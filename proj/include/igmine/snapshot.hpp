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

#ifndef IGMINE_SNAPSHOT_HPP
#define IGMINE_SNAPSHOT_HPP

#include <filesystem>
#include <string>

#include "igmine/state.hpp"

namespace igmine {

inline constexpr std::uint64_t kSnapshotVersion = 1;

/// Canonical snapshot document: single JSON object, keys sorted at every
/// level, arrays in value-id order, floats printed with 17 significant
/// digits, newline-terminated. Two states with equal contents serialize to
/// byte-identical documents.
std::string to_canonical_json(const MiningState& state);

/// Parses and validates a snapshot document: version, structure, then the
/// marginal/joint consistency invariants. Throws VersionMismatch or
/// CorruptSnapshot naming the first failed invariant.
MiningState from_json_text(const std::string& text);

/// Writes the canonical document atomically (temp file + rename).
void save_snapshot(const MiningState& state, const std::filesystem::path& path);

MiningState load_snapshot(const std::filesystem::path& path);

}  // namespace igmine

#endif  // IGMINE_SNAPSHOT_HPP
