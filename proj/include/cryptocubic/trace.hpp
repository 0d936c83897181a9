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
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cryptocubic/destructive_store.hpp"
#include "cryptocubic/value.hpp"

namespace cryptocubic {

/// What a memory snapshot of one party exposes: persistent values and, for
/// the server, the presence bit of each self-destructive slot.
struct PartySnapshot {
  std::string party;
  std::vector<Value> terms;
  std::map<SlotId, Presence> presence;
};

struct TraceColumn {
  std::string header;
  std::vector<std::string> lines;
};

/// One holdings table. Columns are rendered from live state; the snapshot
/// fields keep what an attacker could have captured at that step.
struct TraceEvent {
  std::size_t step = 0;
  std::string label;
  std::vector<TraceColumn> columns;

  std::vector<PartySnapshot> snapshots;
  std::vector<Value> slot_contents;
  std::size_t wire_records = 0;
};

/// Renders one table:
///
///   == step 7: procedure stores Ea in the self-destructive database ==
///   USER_A    | SERVER_S
///   Ka        | <Ks,Ka_Public,Sig_U,Sig_S,ADD,Ea,Es> -- [Ea]
///
/// Columns are padded to their widest cell and lines are right-trimmed.
std::string render_event(const TraceEvent& e);
/// Tables separated by one blank line.
std::string render_trace(const std::vector<TraceEvent>& events);

/// A table read back from text: headers and one multiset of cells per column.
struct HoldingsTable {
  std::string label;
  std::vector<std::string> headers;
  std::vector<std::multiset<std::string>> cells;

  friend bool operator==(const HoldingsTable&, const HoldingsTable&) = default;
};

/// Parses rendered traces or hand-written fixtures. Blocks are separated by
/// blank lines; an optional "== ... ==" line labels a block; the first
/// remaining line holds headers and each further line holds "|"-separated
/// cells.
std::vector<HoldingsTable> parse_tables(std::string_view text);

}  // namespace cryptocubic
