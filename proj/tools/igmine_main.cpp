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

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "igmine/bench.hpp"
#include "igmine/csv.hpp"
#include "igmine/incremental.hpp"
#include "igmine/mining.hpp"
#include "igmine/oracle.hpp"
#include "igmine/snapshot.hpp"
#include "igmine/synthgen.hpp"

namespace fs = std::filesystem;
using namespace igmine;

namespace {

// ---------------------------------------------------------------------
// Logging, controlled by IGM_LOG_LEVEL in {error, warn, info, debug}.
// ---------------------------------------------------------------------

enum class LogLevel { error = 0, warn = 1, info = 2, debug = 3 };

LogLevel log_level() {
  static const LogLevel level = [] {
    const char* env = std::getenv("IGM_LOG_LEVEL");
    if (!env) {
      return LogLevel::warn;
    }
    const std::string v(env);
    if (v == "error") return LogLevel::error;
    if (v == "warn") return LogLevel::warn;
    if (v == "info") return LogLevel::info;
    if (v == "debug") return LogLevel::debug;
    return LogLevel::warn;
  }();
  return level;
}

void log_msg(LogLevel level, const std::string& msg) {
  static const char* names[] = {"error", "warn", "info", "debug"};
  if (level <= log_level()) {
    std::cerr << "[" << names[static_cast<int>(level)] << "] " << msg << "\n";
  }
}

void log_info(const std::string& msg) { log_msg(LogLevel::info, msg); }
void log_debug(const std::string& msg) { log_msg(LogLevel::debug, msg); }

// ---------------------------------------------------------------------
// Shared helpers
// ---------------------------------------------------------------------

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string json_escape(std::string_view s) {
  std::string out = "\"";
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
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
  return out;
}

fs::path default_raw_dir(const fs::path& state_path) {
  return fs::path(state_path.string() + ".raw");
}

std::string batch_file_name(std::uint64_t index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "batch_%06" PRIu64 ".csv", index);
  return buf;
}

// Spools one batch as a canonical comma-CSV with header, so verify can
// replay the stream with default options regardless of ingest dialect.
void spool_batch(const fs::path& dir, std::uint64_t index, const Schema& schema,
                 const std::vector<std::vector<std::string>>& rows) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw IoError("cannot create raw directory '" + dir.string() + "'");
  }
  const fs::path file = dir / batch_file_name(index);
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open '" + file.string() + "' for writing");
  }
  write_csv_row(out, schema.names());
  for (const auto& row : rows) {
    write_csv_row(out, row);
  }
  if (!out.flush()) {
    throw IoError("failed writing '" + file.string() + "'");
  }
  log_debug("spooled " + std::to_string(rows.size()) + " rows to " + file.string());
}

std::vector<fs::path> list_spooled(const fs::path& dir) {
  std::vector<fs::path> files;
  if (!fs::is_directory(dir)) {
    return files;
  }
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (entry.is_regular_file() && name.rfind("batch_", 0) == 0 &&
        name.size() > 4 && name.substr(name.size() - 4) == ".csv") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  return files;
}

AttrIndex resolve_attr(const MiningState& state, const std::string& name) {
  return state.schema.index_of(name);
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty() || path == "-") {
    return std::cout;
  }
  file.open(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw IoError("cannot open '" + path + "' for writing");
  }
  return file;
}

void print_cells_table(std::ostream& os, const MiningState& state,
                       const std::vector<IGCell>& cells) {
  os << "target\tcond_attr\tcond_value\tig\n";
  char buf[40];
  for (const auto& c : cells) {
    std::snprintf(buf, sizeof(buf), "%.9g", c.ig);
    os << state.schema.name(c.target) << '\t' << state.schema.name(c.cond_attr)
       << '\t' << state.dict.raw(c.cond_attr, c.cond_value) << '\t' << buf << '\n';
  }
}

void print_cells_csv(std::ostream& os, const MiningState& state,
                     const std::vector<IGCell>& cells, bool with_band) {
  os << (with_band ? "cond_attr,cond_value,ig,band\n"
                   : "target,cond_attr,cond_value,ig\n");
  for (const auto& c : cells) {
    std::vector<std::string> fields;
    if (!with_band) {
      fields.push_back(state.schema.name(c.target));
    }
    fields.push_back(state.schema.name(c.cond_attr));
    fields.push_back(state.dict.raw(c.cond_attr, c.cond_value));
    fields.push_back(fmt17(c.ig));
    if (with_band) {
      fields.push_back(band_name(c.band.value_or(Band::base)));
    }
    write_csv_row(os, fields);
  }
}

void print_cells_json(std::ostream& os, const MiningState& state,
                      const std::vector<IGCell>& cells, bool with_band) {
  os << "[";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& c = cells[i];
    if (i) {
      os << ",";
    }
    os << "\n{";
    if (with_band) {
      os << "\"band\":" << json_escape(band_name(c.band.value_or(Band::base)))
         << ",";
    }
    os << "\"cond_attr\":" << json_escape(state.schema.name(c.cond_attr))
       << ",\"cond_value\":" << json_escape(state.dict.raw(c.cond_attr, c.cond_value))
       << ",\"ig\":" << fmt17(c.ig)
       << ",\"target\":" << json_escape(state.schema.name(c.target)) << "}";
  }
  os << "\n]\n";
}

// ---------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------

struct IngestOptions {
  std::string delimiter = ",";
  std::string null_token = kDefaultNullToken;

  CsvOptions csv() const {
    if (delimiter.size() != 1) {
      throw BadConfig("delimiter must be a single character");
    }
    return CsvOptions{delimiter[0]};
  }
};

int cmd_init(const std::string& input, const std::string& state_path,
             double log_base, const IngestOptions& ingest, bool keep_raw) {
  const CsvTable table = read_csv_file(input, ingest.csv());
  Schema schema(table.header);
  Dictionary dict(schema.arity());
  const Batch batch = encode_batch(schema, dict, table.rows, ingest.null_token);
  MiningState state = init_states(batch, std::move(schema), std::move(dict), log_base);
  save_snapshot(state, state_path);
  if (keep_raw) {
    spool_batch(default_raw_dir(state_path), 0, state.schema,
                decode_batch(state.schema, state.dict, batch));
  }
  std::cout << "n=" << state.freq.n << "\n";
  std::cout << "attributes:";
  for (AttrIndex a = 0; a < state.arity(); ++a) {
    std::cout << " " << state.schema.name(a) << "(domain="
              << state.dict.domain_size(a) << ")";
  }
  std::cout << "\n";
  log_info("initialized state at " + state_path);
  return 0;
}

int cmd_append(const std::string& state_path, const std::string& batch_csv,
               std::uint64_t rebuild_every, bool keep_raw,
               const IngestOptions& ingest) {
  MiningState state = load_snapshot(state_path);
  const CsvTable table = read_csv_file(batch_csv, ingest.csv());
  if (table.header != state.schema.names()) {
    throw SchemaMismatch("batch columns do not match the state schema");
  }
  const Batch batch = encode_batch(state.schema, state.dict, table.rows,
                                   ingest.null_token);
  update_states(state, batch);
  log_debug("update touched " + std::to_string(state.touches) + " cells");

  const bool spool = keep_raw || rebuild_every > 0;
  if (spool) {
    spool_batch(default_raw_dir(state_path), state.batch_count - 1, state.schema,
                decode_batch(state.schema, state.dict, batch));
  }
  if (rebuild_every > 0 && state.batch_count % rebuild_every == 0) {
    const auto files = list_spooled(default_raw_dir(state_path));
    if (files.empty()) {
      throw IoError("rebuild requested but no raw batches are spooled under '" +
                    default_raw_dir(state_path).string() + "'");
    }
    std::vector<std::vector<std::string>> all_rows;
    for (const auto& file : files) {
      CsvTable spooled = read_csv_file(file, CsvOptions{});
      if (spooled.header != state.schema.names()) {
        throw SchemaMismatch("spooled batch '" + file.string() +
                             "' does not match the state schema");
      }
      for (auto& row : spooled.rows) {
        all_rows.push_back(std::move(row));
      }
    }
    MiningState rebuilt = recompute_from_rows(state.schema.names(), all_rows,
                                              state.log_base, ingest.null_token);
    if (!(rebuilt.dict == state.dict)) {
      throw SchemaMismatch("rebuild produced a different dictionary; raw spool "
                           "does not match the state's stream");
    }
    rebuilt.batch_count = state.batch_count;
    state = std::move(rebuilt);
    log_info("rebuilt entropy caches from " + std::to_string(all_rows.size()) +
             " spooled rows");
  }
  save_snapshot(state, state_path);
  std::cout << "n=" << state.freq.n << " batches=" << state.batch_count << "\n";
  return 0;
}

int cmd_query(const std::string& state_path, const std::string& target,
              std::size_t k, const std::string& format) {
  const MiningState state = load_snapshot(state_path);
  std::optional<AttrIndex> target_idx;
  if (!target.empty()) {
    target_idx = resolve_attr(state, target);
  }
  const auto cells = top_k(state, target_idx, k);
  if (format == "json") {
    print_cells_json(std::cout, state, cells, false);
  } else if (format == "csv") {
    print_cells_csv(std::cout, state, cells, false);
  } else {
    print_cells_table(std::cout, state, cells);
  }
  return 0;
}

int cmd_heatmap(const std::string& state_path, const std::string& target,
                const std::string& out_path, const std::string& format) {
  const MiningState state = load_snapshot(state_path);
  const auto cells = heatmap_bands(state, resolve_attr(state, target));
  std::ofstream file;
  std::ostream& os = open_output(file, out_path);
  if (format == "json") {
    print_cells_json(os, state, cells, true);
  } else {
    print_cells_csv(os, state, cells, true);
  }
  if (!os.good()) {
    throw IoError("failed writing heatmap output");
  }
  return 0;
}

int cmd_verify(const std::string& state_path, std::string raw_dir, double tol) {
  const MiningState state = load_snapshot(state_path);
  if (raw_dir.empty()) {
    raw_dir = default_raw_dir(state_path).string();
  }
  const auto files = list_spooled(raw_dir);
  if (files.empty()) {
    std::cerr << "no raw batches found under '" << raw_dir
              << "' (append with --keep-raw to spool them)\n";
    return 2;
  }
  std::vector<std::vector<std::string>> all_rows;
  for (const auto& file : files) {
    CsvTable table = read_csv_file(file, CsvOptions{});
    if (table.header != state.schema.names()) {
      throw SchemaMismatch("raw batch '" + file.string() +
                           "' does not match the state schema");
    }
    for (auto& row : table.rows) {
      all_rows.push_back(std::move(row));
    }
  }
  log_info("recomputing over " + std::to_string(all_rows.size()) + " rows from " +
           std::to_string(files.size()) + " raw batches");
  const MiningState oracle =
      recompute_from_rows(state.schema.names(), all_rows, state.log_base);
  const DriftReport report = compare_states(state, oracle, tol);
  std::cout << report.summary() << "\n";
  return report.pass() ? 0 : 1;
}

int cmd_bench(const BenchConfig& config, const std::string& out_path) {
  const BenchResult result = run_bench(config);
  std::ofstream file;
  std::ostream& os = open_output(file, out_path);
  write_bench_csv(result, os);
  if (&os != &std::cout) {
    std::cout << "wrote " << result.samples.size() << " samples to " << out_path
              << "\n";
  }
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "mode=%s mean_batch_seconds=%.9f slope_seconds_per_row=%.3e "
                "normalized_slope_per_10k_rows=%.5f%% first=%.9f last=%.9f",
                bench_mode_name(result.mode).c_str(), result.mean_seconds,
                result.slope_seconds_per_row,
                result.normalized_slope_per_10k_rows * 100.0,
                result.first_batch_seconds, result.last_batch_seconds);
  std::cout << buf << "\n";
  return 0;
}

struct GenCli {
  std::uint64_t seed = 0;
  std::uint64_t rows = 1000;
  std::uint32_t attrs = 4;
  std::uint32_t cardinality = 4;
  std::vector<std::string> attr_specs;   // name:cardinality
  std::vector<std::string> plant_specs;  // src:srcval:tgt:tgtval:strength
  std::string out;
};

GenConfig build_gen_config(const GenCli& cli) {
  GenConfig config;
  config.seed = cli.seed;
  config.rows = cli.rows;
  if (!cli.attr_specs.empty()) {
    for (const auto& spec : cli.attr_specs) {
      const auto pos = spec.rfind(':');
      if (pos == std::string::npos || pos == 0) {
        throw BadConfig("attribute spec '" + spec + "' is not name:cardinality");
      }
      try {
        config.attributes.emplace_back(
            spec.substr(0, pos),
            static_cast<std::uint32_t>(std::stoul(spec.substr(pos + 1))));
      } catch (const std::exception&) {
        throw BadConfig("attribute spec '" + spec + "' is not name:cardinality");
      }
    }
  } else {
    for (std::uint32_t a = 0; a < cli.attrs; ++a) {
      config.attributes.emplace_back("a" + std::to_string(a), cli.cardinality);
    }
  }
  auto attr_index = [&](const std::string& name) -> AttrIndex {
    for (std::size_t i = 0; i < config.attributes.size(); ++i) {
      if (config.attributes[i].first == name) {
        return static_cast<AttrIndex>(i);
      }
    }
    throw BadConfig("plant references unknown attribute '" + name + "'");
  };
  for (const auto& spec : cli.plant_specs) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream ss(spec);
    while (std::getline(ss, part, ':')) {
      parts.push_back(part);
    }
    if (parts.size() != 5) {
      throw BadConfig("plant spec '" + spec +
                      "' is not src:srcval:tgt:tgtval:strength");
    }
    try {
      PlantRule rule;
      rule.source_attr = attr_index(parts[0]);
      rule.source_value = static_cast<ValueId>(std::stoul(parts[1]));
      rule.target_attr = attr_index(parts[2]);
      rule.target_value = static_cast<ValueId>(std::stoul(parts[3]));
      rule.strength = std::stod(parts[4]);
      config.plants.push_back(rule);
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      throw BadConfig("plant spec '" + spec +
                      "' is not src:srcval:tgt:tgtval:strength");
    }
  }
  return config;
}

int cmd_gen(const GenCli& cli) {
  const GenConfig config = build_gen_config(cli);
  std::ofstream file;
  std::ostream& os = open_output(file, cli.out);
  write_generated_csv(config, os);
  if (!os.good()) {
    throw IoError("failed writing generated CSV");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"igmine - incremental information gain mining over append-only "
               "categorical relations"};
  app.require_subcommand(1);

  // init
  auto* init = app.add_subcommand("init", "Build state from an initial CSV");
  std::string init_input;
  std::string init_state;
  double init_log_base = 2.0;
  IngestOptions init_ingest;
  bool init_keep_raw = false;
  init->add_option("--input", init_input, "Input CSV (header row required)")
      ->required();
  init->add_option("--state", init_state, "Snapshot path to write")->required();
  init->add_option("--log-base", init_log_base, "Entropy log base")
      ->check(CLI::PositiveNumber)
      ->default_val(2.0);
  init->add_option("--delimiter", init_ingest.delimiter, "CSV delimiter");
  init->add_option("--null-token", init_ingest.null_token,
                   "Replacement for empty cells");
  init->add_flag("--keep-raw", init_keep_raw,
                 "Spool the input rows for later verify/rebuild");

  // append
  auto* append = app.add_subcommand("append", "Apply one batch incrementally");
  std::string append_state;
  std::string append_batch;
  std::uint64_t append_rebuild_every = 0;
  bool append_keep_raw = false;
  IngestOptions append_ingest;
  append->add_option("--state", append_state, "Snapshot path")->required();
  append->add_option("--batch", append_batch, "Batch CSV")->required();
  append->add_option("--rebuild-every", append_rebuild_every,
                     "Rebuild caches from raw spool every K batches (0 = never; "
                     "implies --keep-raw)");
  append->add_flag("--keep-raw", append_keep_raw,
                   "Spool the batch rows for later verify/rebuild");
  append->add_option("--delimiter", append_ingest.delimiter, "CSV delimiter");
  append->add_option("--null-token", append_ingest.null_token,
                     "Replacement for empty cells");

  // query
  auto* query = app.add_subcommand("query", "Rank cells by information gain");
  std::string query_state;
  std::string query_target;
  std::size_t query_k = 20;
  std::string query_format = "table";
  query->add_option("--state", query_state, "Snapshot path")->required();
  query->add_option("--target", query_target, "Restrict to one target attribute");
  query->add_option("--top-k", query_k, "Number of cells to return")
      ->check(CLI::PositiveNumber)
      ->default_val(20);
  query->add_option("--format", query_format, "Output format")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->default_val("table");

  // heatmap
  auto* heatmap = app.add_subcommand("heatmap", "Band all cells for one target");
  std::string heatmap_state;
  std::string heatmap_target;
  std::string heatmap_out;
  std::string heatmap_format = "csv";
  heatmap->add_option("--state", heatmap_state, "Snapshot path")->required();
  heatmap->add_option("--target", heatmap_target, "Target attribute")->required();
  heatmap->add_option("--out", heatmap_out, "Output path (default stdout)");
  heatmap->add_option("--format", heatmap_format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->default_val("csv");

  // verify
  auto* verify = app.add_subcommand("verify", "Audit drift against raw batches");
  std::string verify_state;
  std::string verify_raw;
  double verify_tol = 1e-9;
  verify->add_option("--state", verify_state, "Snapshot path")->required();
  verify->add_option("--raw", verify_raw,
                     "Raw batch directory (default <state>.raw)");
  verify->add_option("--tol", verify_tol, "Entropy drift tolerance")
      ->default_val(1e-9);

  // bench
  auto* bench = app.add_subcommand(
      "bench", "Time incremental vs overhaul state computation");
  BenchConfig bench_config;
  std::string bench_mode = "incremental";
  std::string bench_out;
  bench->add_option("--rows-init", bench_config.rows_init,
                    "Tuples in the initial relation")
      ->default_val(1000);
  bench->add_option("--batch-size", bench_config.batch_size, "Tuples per batch")
      ->required();
  bench->add_option("--batches", bench_config.batches, "Number of batches")
      ->required();
  bench->add_option("--mode", bench_mode, "incremental or overhaul")
      ->check(CLI::IsMember({"incremental", "overhaul"}))
      ->default_val("incremental");
  bench->add_option("--seed", bench_config.seed, "Generator seed")->default_val(0);
  bench->add_option("--out", bench_out, "Sample CSV path (default stdout)");
  bench->add_option("--attrs", bench_config.attributes,
                    "Synthetic attribute count")
      ->default_val(5);
  bench->add_option("--cardinality", bench_config.cardinality,
                    "Synthetic per-attribute cardinality")
      ->default_val(8);
  bench->add_option("--reps", bench_config.repetitions,
                    "Timing repetitions per batch (minimum is recorded)")
      ->check(CLI::PositiveNumber)
      ->default_val(3);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a synthetic relation CSV");
  GenCli gen_cli;
  gen->add_option("--seed", gen_cli.seed, "Generator seed")->default_val(0);
  gen->add_option("--rows", gen_cli.rows, "Row count")
      ->check(CLI::PositiveNumber)
      ->default_val(1000);
  gen->add_option("--attrs", gen_cli.attrs, "Attribute count (names a0, a1, ...)")
      ->default_val(4);
  gen->add_option("--cardinality", gen_cli.cardinality,
                  "Cardinality for --attrs attributes")
      ->default_val(4);
  gen->add_option("--attr", gen_cli.attr_specs,
                  "Explicit attribute spec name:cardinality (repeatable, "
                  "overrides --attrs)");
  gen->add_option("--plant", gen_cli.plant_specs,
                  "Planted dependency src:srcval:tgt:tgtval:strength "
                  "(repeatable)");
  gen->add_option("--out", gen_cli.out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (init->parsed()) {
      return cmd_init(init_input, init_state, init_log_base, init_ingest,
                      init_keep_raw);
    }
    if (append->parsed()) {
      return cmd_append(append_state, append_batch, append_rebuild_every,
                        append_keep_raw, append_ingest);
    }
    if (query->parsed()) {
      return cmd_query(query_state, query_target, query_k, query_format);
    }
    if (heatmap->parsed()) {
      return cmd_heatmap(heatmap_state, heatmap_target, heatmap_out,
                         heatmap_format);
    }
    if (verify->parsed()) {
      return cmd_verify(verify_state, verify_raw, verify_tol);
    }
    if (bench->parsed()) {
      bench_config.mode = bench_mode == "overhaul" ? BenchMode::overhaul
                                                   : BenchMode::incremental;
      return cmd_bench(bench_config, bench_out);
    }
    if (gen->parsed()) {
      return cmd_gen(gen_cli);
    }
  } catch (const BadConfig& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
