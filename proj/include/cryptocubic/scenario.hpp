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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cryptocubic/error.hpp"
#include "cryptocubic/protocol.hpp"

namespace cryptocubic {

enum class CommandKind {
  Setup,           // setup <user>
  Fund,            // fund <user> <cents>
  Transfer,        // transfer <from> <to>
  Redeem,          // redeem <user> <dest> <cents>
  Attack,          // attack <scenario>
  ExpectHoldings,  // expect-holdings <party> <var,...>
  ExpectVerdict,   // expect-verdict <scenario> <true|false>
};

std::string_view command_name(CommandKind k) noexcept;

struct Command {
  CommandKind kind = CommandKind::Setup;
  std::vector<std::string> args;
  std::size_t line = 0;

  // Line numbers are bookkeeping, not content.
  friend bool operator==(const Command& a, const Command& b) { return a.kind == b.kind && a.args == b.args; }
};

/// Parsed script. The optional `mode`, `seed` and `backend` directive lines
/// set defaults that command-line flags override.
struct ScenarioScript {
  std::vector<Command> commands;
  std::optional<Mode> mode;
  std::optional<std::uint64_t> seed;
  std::optional<BackendKind> backend;

  friend bool operator==(const ScenarioScript&, const ScenarioScript&) = default;
};

class ScenarioSyntaxError : public Error {
 public:
  ScenarioSyntaxError(std::size_t line, std::size_t column, const std::string& message)
      : Error(Errc::SyntaxError,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// One command per line; '#' starts a comment. Throws ScenarioSyntaxError
/// with a 1-based position.
ScenarioScript parse_scenario(std::string_view text);
/// Canonical text: directives first, then one command per line.
std::string print_scenario(const ScenarioScript& script);

/// Script directives fill in whatever the caller did not set explicitly.
struct ConfigOverrides {
  std::optional<Mode> mode;
  std::optional<std::uint64_t> seed;
  std::optional<BackendKind> backend;
};
Config resolve_config(const ScenarioScript& script, const ConfigOverrides& overrides, Config base = {});

struct RunResult {
  int exit_code = 0;
  std::string trace;   // rendered holdings tables
  std::string report;  // verdict report, empty when no attack ran
  std::string log;     // one line per command, then the failure if any
  std::string ledger;  // final ledger dump
};

/// Executes the script on a fresh simulation. Stops at the first failed
/// expectation or protocol error and returns exit code 1.
RunResult run_scenario(const ScenarioScript& script, const Config& config);

}  // namespace cryptocubic
