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

#include <gtest/gtest.h>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "padiclab/experiments.hpp"

namespace padiclab {
namespace {

// Expects parse_spec(text) to fail on the given line and field.
void expect_spec_error(const std::string& text, int line, const std::string& field) {
  try {
    (void)parse_spec(text);
    ADD_FAILURE() << "accepted: " << text;
  } catch (const SpecError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
    EXPECT_EQ(e.field(), field) << e.what();
  }
}

std::string replace_once(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  EXPECT_NE(pos, std::string::npos) << from;
  if (pos != std::string::npos) s.replace(pos, from.size(), to);
  return s;
}

std::string fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

constexpr const char* kGoldenSpec =
    "# golden eigen direction\n"
    "name = golden\n"
    "source = periodic:1\n"
    "p = 11\n"
    "k = 4,8\n"
    "checkers = th_main, prop_lem1\n"
    "th_main.x_p = 1:3\n"
    "prop_lem1.n_max = 10\n";

TEST(SpecParseTest, Fields) {
  const ExperimentSpec s = parse_spec(kGoldenSpec);
  EXPECT_EQ(s.name, "golden");
  EXPECT_EQ(s.source, "periodic:1");
  EXPECT_EQ(s.p, 11u);
  EXPECT_EQ(s.ks, std::vector<int>({4, 8}));
  EXPECT_EQ(s.checkers, std::vector<std::string>({"th_main", "prop_lem1"}));
  EXPECT_EQ(s.param("th_main", "x_p"), "1:3");
  EXPECT_EQ(s.param("th_main", "m"), "max");
  EXPECT_EQ(s.param("prop_lem1", "n_max"), "10");
  EXPECT_THROW(s.param("th_main", "nope"), std::invalid_argument);
}

TEST(SpecParseTest, Precisions) {
  EXPECT_EQ(parse_precisions("6"), std::vector<int>({6}));
  EXPECT_EQ(parse_precisions("8,4,4"), std::vector<int>({4, 8}));
  EXPECT_EQ(parse_precisions("1..3,5"), std::vector<int>({1, 2, 3, 5}));
  EXPECT_THROW(parse_precisions("0"), SpecError);
  EXPECT_THROW(parse_precisions("3..1"), SpecError);
  EXPECT_THROW(parse_precisions(""), SpecError);
}

TEST(SpecParseTest, ErrorsNameLineAndField) {
  expect_spec_error("p = 5\ncheckers = \n", 2, "checkers");
  expect_spec_error("p = 5\n", 0, "checkers");
  expect_spec_error("p = 6\ncheckers = prop_lem1\n", 1, "p");
  expect_spec_error("checkers = prop_lem1\ncheckers = prop_lem1\n", 2, "checkers");
  expect_spec_error("checkers = prop_lem1, bogus\n", 1, "checkers");
  expect_spec_error("checkers = prop_lem1\ncolour = red\n", 2, "colour");
  expect_spec_error("checkers = prop_lem1\n\n\nth_main.x_p = 1:2\n", 4, "th_main.x_p");
  expect_spec_error("checkers = prop_lem1\nprop_lem1.bogus = 1\n", 2, "prop_lem1.bogus");
  expect_spec_error("checkers = complexity\n", 0, "source");
  expect_spec_error("source = periodic:1x\ncheckers = complexity\n", 1, "source");
  expect_spec_error("checkers = prop_lem1\nk = 0\n", 2, "k");
  expect_spec_error("p = 2\nk = 70\ncheckers = prop_lem1\n", 2, "k");
  expect_spec_error("checkers = prop_lem1\njust text\n", 2, "just text");
  expect_spec_error("name = a b\ncheckers = prop_lem1\n", 1, "name");
}

TEST(SpecHashTest, CanonicalTextAndHash) {
  const ExperimentSpec a = parse_spec(kGoldenSpec);
  const ExperimentSpec b = parse_spec(
      "prop_lem1.n_max=10\n th_main.x_p =1:3   # comment\nk=8,4\ncheckers=th_main,prop_lem1\np=11\n"
      "source=periodic:1\nname=golden\nthreads = 3\n");
  EXPECT_EQ(a.canonical(), b.canonical());
  EXPECT_EQ(a.hash(), b.hash());
  EXPECT_EQ(a.hash(), fnv1a(a.canonical()));
  EXPECT_EQ(a.hash().size(), 16u);
  const ExperimentSpec c = parse_spec(replace_once(kGoldenSpec, "p = 11", "p = 13"));
  EXPECT_NE(a.hash(), c.hash());
}

TEST(RunTest, GoldenRecord) {
  ExperimentSpec spec = parse_spec(kGoldenSpec);
  spec.threads = 2;
  const ResultRecord rec = run(spec);
  EXPECT_EQ(rec.exit_code(), 0) << rec.summary;
  EXPECT_EQ(rec.spec_hash, spec.hash());
  EXPECT_NE(rec.json.find("\"schema\": \"padiclab-result/1\""), std::string::npos);
  EXPECT_NE(rec.json.find("\"provenance\": \"check_th_main\""), std::string::npos);
  EXPECT_EQ(rec.tables.count("th_main"), 1u);
  EXPECT_EQ(rec.tables.count("prop_lem1"), 1u);
  std::istringstream csv(rec.tables.at("th_main"));
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header.rfind("k,m,verdict,epsilon_squared", 0), 0u) << header;

  // epsilon^2 across k from the comparison of the record with itself.
  const CompareReport same = compare_records(rec.json, rec.json);
  EXPECT_EQ(same.exit_code(), 0);
  EXPECT_TRUE(same.monotone);
  ASSERT_EQ(same.monotonicity.size(), 1u);
  EXPECT_NE(same.monotonicity[0].find("1 -> 11^(-8)"), std::string::npos) << same.monotonicity[0];
}

TEST(RunTest, ThreadCountDoesNotChangeOutput) {
  ExperimentSpec spec = parse_spec(
      "name = det\nsource = thue_morse\np = 2\nk = 1,2\nshift_window = 20\nprefix_window = 4096\n"
      "checkers = complexity, uk_sets, factor_graph, prop_lem1\nfactor_graph.n_max = 4\n");
  spec.threads = 1;
  const ResultRecord one = run(spec);
  spec.threads = 4;
  const ResultRecord four = run(spec);
  EXPECT_EQ(one.json, four.json);
  EXPECT_EQ(one.tables, four.tables);
  EXPECT_EQ(one.summary, four.summary);
}

TEST(RunTest, CheckerErrorsAreRecorded) {
  // x_p is required by th_main; the run reports the error instead of throwing.
  const ResultRecord rec = run(parse_spec("source = periodic:1\np = 5\nk = 3\ncheckers = th_main\n"));
  EXPECT_EQ(rec.errors, 1u);
  EXPECT_EQ(rec.exit_code(), 3);
  EXPECT_THROW(run(ExperimentSpec{}), SpecError);
}

TEST(RunTest, WritesFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "padiclab_experiments_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const ResultRecord rec = run(parse_spec(kGoldenSpec));
  const auto paths = write_outputs(rec, dir.string());
  ASSERT_EQ(paths.size(), 1 + rec.tables.size());
  std::ifstream in(dir / "golden.json", std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), rec.json);
  EXPECT_TRUE(std::filesystem::exists(dir / "golden_th_main.csv"));
  std::filesystem::remove_all(dir);
}

TEST(CompareTest, DifferencesAndSchema) {
  const ResultRecord rec = run(parse_spec(kGoldenSpec));
  const std::string changed = replace_once(rec.json, "\"prop_lem1.n_max\": \"10\"", "\"prop_lem1.n_max\": \"11\"");
  const CompareReport d = compare_records(rec.json, changed);
  EXPECT_EQ(d.exit_code(), 1);
  ASSERT_FALSE(d.differences.empty());
  EXPECT_NE(d.differences[0].find("n_max"), std::string::npos) << d.differences[0];

  const CompareReport broken = compare_records(rec.json, rec.json.substr(0, rec.json.size() / 2));
  EXPECT_EQ(broken.exit_code(), 3);
  EXPECT_FALSE(broken.schema_ok);
  const CompareReport wrong = compare_records(rec.json, "{\"schema\": \"other\", \"results\": []}");
  EXPECT_EQ(wrong.exit_code(), 3);
  EXPECT_NE(wrong.text().find("schema error"), std::string::npos);
}

TEST(CompareTest, FlagsIncreasingEpsilon) {
  const ResultRecord rec = run(parse_spec(kGoldenSpec));
  // Make the k = 8 value larger than the k = 4 one.
  const std::string worse = replace_once(rec.json, "\"twice_exponent\": -16", "\"twice_exponent\": 4");
  const CompareReport r = compare_records(rec.json, worse);
  EXPECT_FALSE(r.monotone);
  EXPECT_EQ(r.exit_code(), 1);
  EXPECT_NE(r.text().find("INCREASED"), std::string::npos);
}

TEST(RegistryTest, EveryCheckerDocumented) {
  for (const auto& c : checker_registry()) {
    EXPECT_FALSE(c.summary.empty()) << c.name;
    EXPECT_FALSE(c.provenance.empty()) << c.name;
    EXPECT_EQ(&checker_info(c.name), &c);
  }
  EXPECT_THROW(checker_info("nope"), std::invalid_argument);
}

}  // namespace
}  // namespace padiclab
