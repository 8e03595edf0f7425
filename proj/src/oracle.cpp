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

#include "igmine/oracle.hpp"

#include <cmath>
#include <sstream>

namespace igmine {

MiningState recompute_states(const Schema& schema, const Dictionary& dict,
                             std::span<const Batch> batches, double log_base) {
  if (batches.empty()) {
    throw EmptyBatch();
  }
  Batch all;
  for (const Batch& b : batches) {
    concat_batch(all, b);
  }
  return init_states(all, schema, dict, log_base);
}

MiningState recompute_from_rows(const std::vector<std::string>& attribute_names,
                                const std::vector<std::vector<std::string>>& rows,
                                double log_base, const std::string& null_token) {
  Schema schema(attribute_names);
  Dictionary dict(schema.arity());
  Batch batch = encode_batch(schema, dict, rows, null_token);
  return init_states(batch, std::move(schema), std::move(dict), log_base);
}

std::string DriftReport::summary() const {
  std::ostringstream os;
  os << (pass() ? "PASS" : "FAIL");
  if (!counts_equal) {
    os << " count mismatch: " << mismatch;
  } else {
    os << " max marginal entropy diff " << max_marginal_diff
       << ", max conditional entropy diff " << max_conditional_diff
       << " (tolerance " << tolerance << ")";
  }
  return os.str();
}

namespace {

void note_mismatch(DriftReport& report, const std::string& where) {
  if (report.counts_equal) {
    report.counts_equal = false;
    report.mismatch = where;
  }
}

}  // namespace

DriftReport compare_states(const MiningState& a, const MiningState& b, double tol) {
  if (!(a.schema == b.schema)) {
    throw SchemaMismatch("attribute lists differ");
  }
  if (!(a.dict == b.dict)) {
    throw SchemaMismatch("dictionaries differ");
  }
  if (a.log_base != b.log_base) {
    throw SchemaMismatch("log bases differ");
  }
  const std::size_t arity = a.arity();

  DriftReport report;
  report.tolerance = tol;
  if (a.freq.n != b.freq.n) {
    note_mismatch(report, "n: " + std::to_string(a.freq.n) + " vs " +
                              std::to_string(b.freq.n));
  }
  for (AttrIndex attr = 0; attr < arity && report.counts_equal; ++attr) {
    const std::size_t dom = a.dict.domain_size(attr);
    for (ValueId x = 0; x < dom; ++x) {
      if (a.freq.marginal(attr, x) != b.freq.marginal(attr, x)) {
        note_mismatch(report, "f_" + a.schema.name(attr) + "(" +
                                  a.dict.raw(attr, x) + "): " +
                                  std::to_string(a.freq.marginal(attr, x)) + " vs " +
                                  std::to_string(b.freq.marginal(attr, x)));
        break;
      }
    }
  }
  for (std::size_t p = 0; p < a.freq.joints.size() && report.counts_equal; ++p) {
    if (a.freq.joints[p] != b.freq.joints[p]) {
      note_mismatch(report, "joint table for pair #" + std::to_string(p));
    }
  }

  for (std::size_t i = 0; i < arity; ++i) {
    const double d = std::fabs(a.entropy.marginal[i] - b.entropy.marginal[i]);
    if (d > report.max_marginal_diff) {
      report.max_marginal_diff = d;
    }
  }
  for (std::size_t o = 0; o < a.entropy.conditional.size(); ++o) {
    const auto& ca = a.entropy.conditional[o];
    const auto& cb = b.entropy.conditional[o];
    if (ca.size() != cb.size()) {
      note_mismatch(report, "conditional cache #" + std::to_string(o) +
                                " sizes: " + std::to_string(ca.size()) + " vs " +
                                std::to_string(cb.size()));
      continue;
    }
    auto ia = ca.begin();
    auto ib = cb.begin();
    for (; ia != ca.end(); ++ia, ++ib) {
      if (ia->first != ib->first) {
        note_mismatch(report, "conditional cache #" + std::to_string(o) +
                                  " keys diverge at id " +
                                  std::to_string(ia->first));
        break;
      }
      const double d = std::fabs(ia->second - ib->second);
      if (d > report.max_conditional_diff) {
        report.max_conditional_diff = d;
      }
    }
  }
  return report;
}

}  // namespace igmine
