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
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <vector>

#include "cryptocubic/bytes.hpp"

namespace cryptocubic {

using SlotId = std::uint64_t;

enum class Presence { Absent, Present };

/// Write authority over a fixed set of slots. Only grant_source mints one
/// that the issuing store honours; a capability rebuilt from presented bytes
/// is checked against the store's grant registry and rejected unless it
/// carries a token the store issued.
class SourceCapability {
 public:
  /// Wraps untrusted credential bytes, e.g. decoded from a request.
  static SourceCapability presented(Bytes token, std::set<SlotId> scope) {
    return SourceCapability(std::move(token), std::move(scope));
  }

  const Bytes& token() const noexcept { return token_; }
  const std::set<SlotId>& scope() const noexcept { return scope_; }

  friend bool operator==(const SourceCapability&, const SourceCapability&) = default;

 private:
  friend class DestructiveStore;
  SourceCapability(Bytes token, std::set<SlotId> scope) : token_(std::move(token)), scope_(std::move(scope)) {}

  Bytes token_;
  std::set<SlotId> scope_;
};

/// Delegated, single-use permission to put a taken value back.
class ReinsertPermit {
 public:
  SlotId slot() const noexcept { return slot_; }
  constexpr bool single_use() const noexcept { return true; }

 private:
  friend class DestructiveStore;
  ReinsertPermit(SlotId slot, std::uint64_t serial) : slot_(slot), serial_(serial) {}

  SlotId slot_;
  std::uint64_t serial_;
};

struct TakeResult {
  Bytes value;
  ReinsertPermit permit;
};

struct SlotHistory {
  std::uint64_t fills = 0;  // inserts + reinserts
  std::uint64_t takes = 0;
  std::uint64_t reinserts = 0;
};

enum class JournalOp : std::uint8_t { Insert = 1, Take = 2, Reinsert = 3 };

/// One journal record: u32 length, u64 sequence, u8 op, u64 slot, 32-byte
/// SHA-256 of the value involved.
struct JournalRecord {
  std::uint64_t sequence = 0;
  JournalOp op = JournalOp::Insert;
  SlotId slot = 0;
  Bytes value_digest;

  friend bool operator==(const JournalRecord&, const JournalRecord&) = default;
};

std::vector<JournalRecord> read_journal(const std::filesystem::path& path);
/// Slot occupancy implied by replaying a journal from an empty store.
std::map<SlotId, Presence> replay_presence(const std::vector<JournalRecord>& records);

/// Self-destructive storage: ping reveals presence only, take empties the
/// slot atomically, and refilling needs either the source capability or the
/// permit handed out by the take.
///
/// Thread-safe; take and insert are linearizable per slot.
class DestructiveStore {
 public:
  DestructiveStore() = default;
  explicit DestructiveStore(const std::filesystem::path& journal);

  DestructiveStore(const DestructiveStore&) = delete;
  DestructiveStore& operator=(const DestructiveStore&) = delete;

  SourceCapability grant_source(const std::set<SlotId>& scope);
  void insert(const SourceCapability& cap, SlotId slot, Bytes value);
  Presence ping(SlotId slot) const;
  TakeResult take(SlotId slot);
  void reinsert(const ReinsertPermit& permit, Bytes value);

  SlotHistory history(SlotId slot) const;
  std::map<SlotId, Presence> presence() const;
  /// Digest of every slot's occupancy, contents and counters.
  Bytes state_digest() const;
  /// Instrumentation view of current contents, equivalent to one take per
  /// full slot without the deletion. Used by the adversary audit only.
  std::map<SlotId, Bytes> contents_for_audit() const;

 private:
  struct PendingPermit {
    std::uint64_t serial = 0;
    Bytes digest;
    bool used = false;
  };
  struct Slot {
    std::optional<Bytes> value;
    SlotHistory history;
    std::optional<PendingPermit> permit;
  };

  Slot& slot_locked(SlotId id);
  const Slot& slot_locked(SlotId id) const;
  void journal_locked(JournalOp op, SlotId slot, ByteView value);

  mutable std::mutex mu_;
  std::map<SlotId, Slot> slots_;
  std::map<Bytes, std::set<SlotId>> grants_;
  std::optional<std::ofstream> journal_;
  std::uint64_t sequence_ = 0;
};

}  // namespace cryptocubic
