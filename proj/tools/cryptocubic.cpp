// Copyright 2026 The CryptoCubic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "cryptocubic/adversary.hpp"
#include "cryptocubic/scenario.hpp"

namespace {

using namespace cryptocubic;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Runs CryptoCubic scenarios and the attack suite"};

  std::string script_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
  std::optional<std::string> backend;
  std::string trace_path;
  std::string ledger_path;
  bool quiet = false;
  bool attack_suite = false;

  app.add_option("scenario", script_path, "Scenario script")->check(CLI::ExistingFile);
  app.add_option("--seed", seed, "RNG seed (default 0)");
  app.add_option("--mode", mode, "cryptocubic, baseline3 or bare4 (default cryptocubic)")
      ->check(CLI::IsMember({"cryptocubic", "baseline3", "bare4"}));
  app.add_option("--backend", backend, "symbolic or concrete (default symbolic)")
      ->check(CLI::IsMember({"symbolic", "concrete"}));
  app.add_option("--trace", trace_path, "Write the trace tables to this file instead of stdout");
  app.add_option("--ledger", ledger_path, "Write the final ledger balances to this file");
  app.add_flag("--quiet", quiet, "Print only the verdict report and failures");
  app.add_flag("--attack-suite", attack_suite, "Run all attack scenarios and print the verdict report");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help exits 0; every usage error exits 2.
    return app.exit(e) == 0 ? 0 : 2;
  }

  ConfigOverrides overrides;
  if (mode) overrides.mode = parse_mode(*mode);
  if (seed) overrides.seed = *seed;
  if (backend) overrides.backend = parse_backend(*backend);

  try {
    if (attack_suite) {
      auto config = resolve_config({}, overrides);
      std::vector<AttackVerdict> verdicts;
      for (const auto& name : attack_scenarios()) verdicts.push_back(run_attack(name, config));
      std::cout << verdict_report(verdicts);
      return 0;
    }
    if (script_path.empty()) {
      std::cerr << "a scenario file is required unless --attack-suite is given\n" << app.help();
      return 2;
    }

    auto script = parse_scenario(read_file(script_path));
    auto result = run_scenario(script, resolve_config(script, overrides));

    if (!trace_path.empty()) {
      write_file(trace_path, result.trace);
    } else if (!quiet) {
      std::cout << result.trace;
    }
    if (!ledger_path.empty()) write_file(ledger_path, result.ledger);
    if (!result.report.empty()) {
      if (!quiet && trace_path.empty() && !result.trace.empty()) std::cout << "\n";
      std::cout << result.report;
    }
    if (result.exit_code != 0 || !quiet) std::cerr << result.log;
    return result.exit_code;
  } catch (const ScenarioSyntaxError& e) {
    std::cerr << script_path << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
