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

// Command line front end: run experiment specs, compare result records and
// describe the available sources and checkers.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "padiclab/experiments.hpp"
#include "padiclab/source_spec.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_run(const std::string& spec_path, const std::string& out_dir, const std::string& ks, std::size_t threads,
            bool quiet) {
  padiclab::ExperimentSpec spec = padiclab::load_spec(spec_path);
  if (!ks.empty()) spec.ks = padiclab::parse_precisions(ks);
  if (threads) spec.threads = threads;
  const std::string dir = out_dir.empty() ? spec.output : out_dir;
  const padiclab::ResultRecord rec = padiclab::run(spec);
  if (!quiet) std::cout << "spec " << spec.name << " (" << rec.spec_hash << ")\n" << rec.summary;
  if (!dir.empty()) {
    std::filesystem::create_directories(dir);
    for (const auto& path : padiclab::write_outputs(rec, dir)) {
      if (!quiet) std::cout << "wrote " << path << "\n";
    }
  } else if (!quiet) {
    std::cout << rec.json;
  }
  return rec.exit_code();
}

int cmd_compare(const std::string& a, const std::string& b) {
  const padiclab::CompareReport rep = padiclab::compare_records(slurp(a), slurp(b));
  std::cout << rep.text();
  return rep.exit_code();
}

void cmd_describe(const std::string& name) {
  if (name.empty()) {
    for (const auto& c : padiclab::checker_registry()) {
      std::cout << c.name << (c.per_precision ? " [per k]" : "") << "\n    " << c.summary << "\n";
    }
    return;
  }
  const auto& c = padiclab::checker_info(name);
  std::cout << c.name << ": " << c.summary << "\n"
            << "  runs once " << (c.per_precision ? "per precision k" : "per spec") << "\n"
            << "  needs a word source: " << (c.needs_source ? "yes" : "no") << "\n"
            << "  operations: " << c.provenance << "\n";
  if (!c.params.empty()) std::cout << "  parameters (set as " << c.name << ".<param> = value):\n";
  for (const auto& p : c.params) {
    std::cout << "    " << p.name << " = " << (p.default_value.empty() ? "(none)" : p.default_value) << "\n        "
              << p.help << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"padiclab: p-adic Littlewood experiments with exact arithmetic"};
  app.require_subcommand(1);

  std::string spec_path, out_dir, ks;
  std::size_t threads = 0;
  bool quiet = false;
  auto* run = app.add_subcommand("run", "Run an experiment spec (defaults: k = 6, B = 50, prefix window = 2^14)");
  run->add_option("spec", spec_path, "Spec file (key = value lines)")->required()->check(CLI::ExistingFile);
  run->add_option("-o,--out", out_dir, "Directory for the JSON and CSV results (overrides 'output')");
  run->add_option("-k,--precision", ks, "Precision list overriding the spec, e.g. 4,8,12 or 1..8");
  run->add_option("-j,--threads", threads, "Worker threads (default: hardware concurrency)");
  run->add_flag("-q,--quiet", quiet, "Print nothing; rely on the exit status");

  std::string rec_a, rec_b;
  auto* compare = app.add_subcommand("compare", "Diff two result records and report epsilon monotonicity");
  compare->add_option("first", rec_a, "Result JSON")->required()->check(CLI::ExistingFile);
  compare->add_option("second", rec_b, "Result JSON")->required()->check(CLI::ExistingFile);

  auto* sources = app.add_subcommand("list-sources", "Show the word-source syntax");

  std::string checker;
  auto* describe = app.add_subcommand("describe-checker", "List checkers, or show one checker's parameters");
  describe->add_option("name", checker, "Checker name");

  app.footer("Exit status: 0 success, 1 hypothesis failures present, 2 precision-limited results, 3 error.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  try {
    if (*run) return cmd_run(spec_path, out_dir, ks, threads, quiet);
    if (*compare) return cmd_compare(rec_a, rec_b);
    if (*sources) {
      std::cout << padiclab::source_syntax();
      return 0;
    }
    if (*describe) {
      cmd_describe(checker);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}
