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

#ifndef IGMINE_ERRORS_HPP
#define IGMINE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace igmine {

/// Base class for all engine errors. Subcommands map these to exit code 1
/// (data/verification failures) or 2 (BadConfig, usage).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ArityMismatch : public Error {
 public:
  ArityMismatch(std::size_t row, std::size_t got, std::size_t want)
      : Error("row " + std::to_string(row) + ": arity mismatch, got " +
              std::to_string(got) + " fields, schema has " + std::to_string(want)),
        row_(row) {}
  std::size_t row() const { return row_; }

 private:
  std::size_t row_;
};

class EmptyBatch : public Error {
 public:
  EmptyBatch() : Error("empty batch: at least one row is required") {}
};

class ZeroTotal : public Error {
 public:
  ZeroTotal() : Error("entropy over an empty distribution (total = 0)") {}
};

class UnknownValue : public Error {
 public:
  explicit UnknownValue(const std::string& what) : Error("unknown value: " + what) {}
};

class UnknownAttribute : public Error {
 public:
  explicit UnknownAttribute(const std::string& what)
      : Error("unknown attribute: " + what) {}
};

class SameAttribute : public Error {
 public:
  explicit SameAttribute(std::size_t attr)
      : Error("target and conditional attribute are both #" + std::to_string(attr)) {}
};

class InvalidDelta : public Error {
 public:
  explicit InvalidDelta(const std::string& what) : Error("invalid delta: " + what) {}
};

class MissingPrior : public Error {
 public:
  explicit MissingPrior(const std::string& what)
      : Error("missing prior entropy: " + what) {}
};

class InconsistentDelta : public Error {
 public:
  explicit InconsistentDelta(const std::string& what)
      : Error("inconsistent delta: " + what) {}
};

class SchemaMismatch : public Error {
 public:
  explicit SchemaMismatch(const std::string& what) : Error("schema mismatch: " + what) {}
};

class VersionMismatch : public Error {
 public:
  explicit VersionMismatch(std::uint64_t got, std::uint64_t want)
      : Error("snapshot version " + std::to_string(got) + ", expected " +
              std::to_string(want)) {}
};

class CorruptSnapshot : public Error {
 public:
  explicit CorruptSnapshot(const std::string& what)
      : Error("corrupt snapshot: " + what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error("io error: " + what) {}
};

class BadConfig : public Error {
 public:
  explicit BadConfig(const std::string& what) : Error("bad config: " + what) {}
};

class CsvError : public Error {
 public:
  CsvError(std::size_t line, const std::string& what)
      : Error("csv line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace igmine

#endif  // IGMINE_ERRORS_HPP
