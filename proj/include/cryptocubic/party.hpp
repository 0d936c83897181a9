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

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cryptocubic/value.hpp"

namespace cryptocubic {

using SquareId = std::uint32_t;  // 0: not bound to a square
using ScopeId = std::uint64_t;

/// Display name of a square-scoped variable: the first square uses the bare
/// name, later squares get a "#n" suffix.
std::string scoped_name(std::string_view name, SquareId square);

/// Ordering class of a held variable in rendered holdings.
enum class Role : std::uint8_t {
  SymmetricKey,
  PrivateKey,
  SigningKey,
  SquareCypher,
  Address,
  PublicKey,
  Digest,
  AuthToken,
};

struct MemoryEntry {
  std::string name;
  SquareId square = 0;
  Role role = Role::AuthToken;
  Value value;
  std::uint64_t seq = 0;
};

/// A party's persistent memory: what a snapshot of the party exposes.
/// Writing an existing (name, square) replaces the value in place.
class PartyMemory {
 public:
  void put(std::string name, Role role, Value value, SquareId square = 0);
  const Value* find(std::string_view name, SquareId square = 0) const;
  const Value& at(std::string_view name, SquareId square = 0) const;
  bool contains(std::string_view name, SquareId square = 0) const { return find(name, square) != nullptr; }
  bool erase(std::string_view name, SquareId square = 0);

  const std::vector<MemoryEntry>& entries() const noexcept { return entries_; }
  /// Entries ordered by role, then by first write.
  std::vector<const MemoryEntry*> ordered() const;

 private:
  std::vector<MemoryEntry> entries_;
  std::uint64_t seq_ = 0;
};

/// A running program's transient bindings. They are never part of the
/// owning party's memory and are zeroed when the procedure terminates.
class DynamicProcedure {
 public:
  DynamicProcedure(ScopeId id, SquareId square) : id_(id), square_(square) {}
  ~DynamicProcedure() { terminate(); }

  DynamicProcedure(DynamicProcedure&&) = default;
  DynamicProcedure& operator=(DynamicProcedure&&) = default;
  DynamicProcedure(const DynamicProcedure&) = delete;
  DynamicProcedure& operator=(const DynamicProcedure&) = delete;

  ScopeId id() const noexcept { return id_; }
  SquareId square() const noexcept { return square_; }
  bool running() const noexcept { return running_; }

  void bind(std::string name, Value value);
  bool has(std::string_view name) const;
  const Value& get(std::string_view name) const;

  /// Records that this procedure filled a self-destructive slot; rendered
  /// as "<...> -- [label]" while the procedure runs.
  void note_slot_insert(std::string label) { inserted_.push_back(std::move(label)); }

  const std::vector<std::pair<std::string, Value>>& bindings() const noexcept { return bindings_; }
  const std::vector<std::string>& inserted_slots() const noexcept { return inserted_; }

  void terminate() noexcept;

 private:
  ScopeId id_;
  SquareId square_;
  bool running_ = true;
  std::vector<std::pair<std::string, Value>> bindings_;
  std::vector<std::string> inserted_;
};

class Party {
 public:
  Party(std::string name, bool is_server) : name_(std::move(name)), is_server_(is_server) {}

  const std::string& name() const noexcept { return name_; }
  bool is_server() const noexcept { return is_server_; }
  /// "USER_A" or "SERVER_S".
  std::string column() const { return (is_server_ ? "SERVER_" : "USER_") + name_; }

  PartyMemory& memory() noexcept { return memory_; }
  const PartyMemory& memory() const noexcept { return memory_; }

  DynamicProcedure& open_procedure(SquareId square);
  DynamicProcedure& procedure(ScopeId id);
  void terminate(ScopeId id);
  const std::map<ScopeId, DynamicProcedure>& procedures() const noexcept { return procedures_; }

 private:
  std::string name_;
  bool is_server_;
  PartyMemory memory_;
  std::map<ScopeId, DynamicProcedure> procedures_;
  ScopeId next_scope_ = 1;
};

}  // namespace cryptocubic
