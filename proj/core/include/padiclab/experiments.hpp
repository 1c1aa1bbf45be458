// Copyright 2026 The padiclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace padiclab {

/// Spec validation failure; line is 0 for problems not tied to one line.
class SpecError : public std::runtime_error {
 public:
  SpecError(int line, std::string field, const std::string& message);
  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

/// A reproducible run: one source, one prime, a list of precisions and the
/// checkers to execute. Parsed from "key = value" lines; see docs/spec_format.md.
struct ExperimentSpec {
  std::string name = "experiment";
  std::string source;  // empty when no selected checker needs a word
  unsigned long p = 2;
  std::vector<int> ks{6};
  std::size_t prefix_window = std::size_t{1} << 14;
  std::size_t shift_window = 100;
  mpz_class trajectory_window = 0;  // 0: 10 * p^k
  std::size_t threads = 0;          // 0: hardware concurrency
  std::vector<std::string> checkers;
  /// "checker.param" -> value.
  std::map<std::string, std::string> params;
  std::string output;  // directory for result files; empty: none

  /// Normalized text; equal specs give equal text.
  std::string canonical() const;
  /// FNV-1a 64-bit hash of canonical(), as 16 hex digits.
  std::string hash() const;
  /// Parameter value or the checker's documented default.
  std::string param(const std::string& checker, const std::string& key) const;
};

ExperimentSpec parse_spec(std::string_view text);
ExperimentSpec load_spec(const std::string& path);
/// "6", "4,8,12" or "1..8"; sorted and deduplicated. Throws SpecError.
std::vector<int> parse_precisions(std::string_view text);

struct CheckerParam {
  std::string name;
  std::string default_value;  // empty: required or optional without default
  std::string help;
};

struct CheckerInfo {
  std::string name;
  std::string summary;
  /// Library operations the results trace to.
  std::string provenance;
  bool per_precision = false;
  bool needs_source = true;
  std::vector<CheckerParam> params;
};

const std::vector<CheckerInfo>& checker_registry();
const CheckerInfo& checker_info(const std::string& name);

struct ResultRecord {
  std::string name;
  std::string spec_hash;
  /// Pretty-printed JSON with sorted keys.
  std::string json;
  /// Table name -> CSV text.
  std::map<std::string, std::string> tables;
  std::size_t hypothesis_failures = 0;
  std::size_t precision_limited = 0;
  std::size_t errors = 0;
  std::string summary;

  /// 3 on checker errors, else 2 when precision-limited results are
  /// present, else 1 for hypothesis failures, else 0.
  int exit_code() const;
};

ResultRecord run(const ExperimentSpec& spec);

/// Writes <dir>/<name>.json and <dir>/<name>_<table>.csv; returns the paths.
std::vector<std::string> write_outputs(const ResultRecord& record, const std::string& dir);

struct CompareReport {
  bool schema_ok = true;
  std::string schema_error;
  std::vector<std::string> differences;
  std::vector<std::string> monotonicity;
  bool monotone = true;
  /// 0 identical, 1 different (or epsilon increased), 3 schema error.
  int exit_code() const;
  std::string text() const;
};

CompareReport compare_records(const std::string& json_a, const std::string& json_b);

/// The result schema identifier written into every record.
inline constexpr const char* kResultSchema = "padiclab-result/1";

}  // namespace padiclab
