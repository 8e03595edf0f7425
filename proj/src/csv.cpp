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

#include "igmine/csv.hpp"

#include <fstream>
#include <sstream>

#include "igmine/errors.hpp"

namespace igmine {

namespace {

// Pull-parser over the whole text. Tracks the 1-based line number for
// error reporting.
class Parser {
 public:
  Parser(std::string_view text, char delimiter) : text_(text), delim_(delimiter) {}

  bool eof() const { return pos_ >= text_.size(); }
  std::size_t line() const { return line_; }

  // Reads one record; returns false at end of input. Empty trailing line
  // is not a record.
  bool next_record(std::vector<std::string>& fields) {
    fields.clear();
    if (eof()) {
      return false;
    }
    std::string field;
    bool in_quotes = false;
    bool quoted_field = false;
    while (true) {
      if (eof()) {
        if (in_quotes) {
          throw CsvError(line_, "unterminated quoted field");
        }
        fields.push_back(std::move(field));
        return true;
      }
      char c = text_[pos_++];
      if (in_quotes) {
        if (c == '"') {
          if (!eof() && text_[pos_] == '"') {
            field.push_back('"');
            ++pos_;
          } else {
            in_quotes = false;
          }
        } else {
          if (c == '\n') {
            ++line_;
          }
          field.push_back(c);
        }
        continue;
      }
      if (c == '"' && field.empty() && !quoted_field) {
        in_quotes = true;
        quoted_field = true;
      } else if (c == delim_) {
        fields.push_back(std::move(field));
        field.clear();
        quoted_field = false;
      } else if (c == '\r') {
        if (!eof() && text_[pos_] == '\n') {
          ++pos_;
        }
        ++line_;
        fields.push_back(std::move(field));
        return true;
      } else if (c == '\n') {
        ++line_;
        fields.push_back(std::move(field));
        return true;
      } else {
        field.push_back(c);
      }
    }
  }

  void skip_comment_lines() {
    while (!eof() && text_[pos_] == '#') {
      while (!eof() && text_[pos_] != '\n') {
        ++pos_;
      }
      if (!eof()) {
        ++pos_;
        ++line_;
      }
    }
  }

 private:
  std::string_view text_;
  char delim_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

}  // namespace

CsvTable read_csv_text(std::string_view text, const CsvOptions& opts) {
  Parser parser(text, opts.delimiter);
  parser.skip_comment_lines();

  CsvTable table;
  if (!parser.next_record(table.header) || table.header.empty() ||
      (table.header.size() == 1 && table.header[0].empty())) {
    throw CsvError(parser.line(), "missing header row");
  }
  std::vector<std::string> fields;
  while (parser.next_record(fields)) {
    if (fields.size() == 1 && fields[0].empty()) {
      continue;  // blank line
    }
    table.rows.push_back(std::move(fields));
    fields.clear();
  }
  return table;
}

CsvTable read_csv_file(const std::filesystem::path& path, const CsvOptions& opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open '" + path.string() + "' for reading");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw IoError("failed reading '" + path.string() + "'");
  }
  return read_csv_text(buf.str(), opts);
}

std::string csv_quote(std::string_view field, char delimiter) {
  bool needs_quotes = false;
  for (char c : field) {
    if (c == delimiter || c == '"' || c == '\n' || c == '\r') {
      needs_quotes = true;
      break;
    }
  }
  if (!needs_quotes) {
    return std::string(field);
  }
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char c : field) {
    if (c == '"') {
      out.push_back('"');
    }
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_csv_row(std::ostream& os, const std::vector<std::string>& fields,
                   char delimiter) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) {
      os.put(delimiter);
    }
    os << csv_quote(fields[i], delimiter);
  }
  os.put('\n');
}

}  // namespace igmine
