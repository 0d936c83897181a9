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

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cryptocubic/protocol.hpp"
#include "cryptocubic/scenario.hpp"
#include "cryptocubic/trace.hpp"

namespace cryptocubic::testing {

inline std::string source_path(const std::string& relative) {
  return std::string(CRYPTOCUBIC_SOURCE_DIR) + "/" + relative;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline const std::vector<Mode>& all_modes() {
  static const std::vector<Mode> modes = {Mode::CryptoCubic, Mode::Bare4, Mode::Baseline3};
  return modes;
}

/// Runs scenarios/<mode>.scn under the given backend.
inline RunResult run_canonical(Mode mode, BackendKind backend) {
  auto script = parse_scenario(read_file(source_path("scenarios/" + std::string(mode_name(mode)) + ".scn")));
  ConfigOverrides flags;
  flags.backend = backend;
  return run_scenario(script, resolve_config(script, flags));
}

/// Index of the first reference table that has no match when the reference
/// is read as an ordered subsequence of the trace. Tables compare by column
/// headers and per-column cell multisets; consecutive references may match
/// the same step. nullopt when every table matches.
inline std::optional<std::size_t> first_unmatched_table(const std::vector<HoldingsTable>& reference,
                                                        const std::vector<HoldingsTable>& trace) {
  std::size_t pos = 0;
  for (std::size_t r = 0; r < reference.size(); ++r) {
    bool found = false;
    for (std::size_t t = pos; t < trace.size(); ++t) {
      if (trace[t].headers == reference[r].headers && trace[t].cells == reference[r].cells) {
        pos = t;
        found = true;
        break;
      }
    }
    if (!found) return r;
  }
  return std::nullopt;
}

}  // namespace cryptocubic::testing
