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

#ifndef IGMINE_CSV_HPP
#define IGMINE_CSV_HPP

#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace igmine {

/// RFC-4180-style dialect: quoted fields with "" escapes, CRLF or LF line
/// endings, configurable delimiter. First non-comment row is the header.
/// Lines starting with '#' before the header are skipped (generator
/// provenance comments).
struct CsvOptions {
  char delimiter = ',';
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv_text(std::string_view text, const CsvOptions& opts = {});
CsvTable read_csv_file(const std::filesystem::path& path, const CsvOptions& opts = {});

/// Quotes a field iff it contains the delimiter, a quote, or a line break.
std::string csv_quote(std::string_view field, char delimiter = ',');

void write_csv_row(std::ostream& os, const std::vector<std::string>& fields,
                   char delimiter = ',');

}  // namespace igmine

#endif  // IGMINE_CSV_HPP
