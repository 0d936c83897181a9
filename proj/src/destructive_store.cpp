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

#include "cryptocubic/destructive_store.hpp"

#include <sodium.h>

#include <stdexcept>

#include "cryptocubic/error.hpp"

namespace cryptocubic {
namespace {

Bytes sha256(ByteView data) {
  Bytes out(crypto_hash_sha256_BYTES);
  crypto_hash_sha256(out.data(), data.data(), data.size());
  return out;
}

constexpr std::size_t kCapabilityBytes = 32;
constexpr std::uint32_t kRecordBody = 8 + 1 + 8 + crypto_hash_sha256_BYTES;

}  // namespace

DestructiveStore::DestructiveStore(const std::filesystem::path& journal) {
  journal_.emplace(journal, std::ios::binary | std::ios::app);
  if (!*journal_) throw std::runtime_error("cannot open journal " + journal.string());
}

SourceCapability DestructiveStore::grant_source(const std::set<SlotId>& scope) {
  if (sodium_init() < 0) throw std::runtime_error("libsodium initialisation failed");
  std::lock_guard lock(mu_);
  for (auto id : scope) {
    if (slots_.contains(id)) throw Error(Errc::SlotIdTaken, "slot " + std::to_string(id));
  }
  Bytes token(kCapabilityBytes);
  randombytes_buf(token.data(), token.size());
  for (auto id : scope) slots_.emplace(id, Slot{});
  grants_.emplace(token, scope);
  return SourceCapability(std::move(token), scope);
}

DestructiveStore::Slot& DestructiveStore::slot_locked(SlotId id) {
  auto it = slots_.find(id);
  if (it == slots_.end()) throw Error(Errc::UnknownSlot, "slot " + std::to_string(id));
  return it->second;
}

const DestructiveStore::Slot& DestructiveStore::slot_locked(SlotId id) const {
  auto it = slots_.find(id);
  if (it == slots_.end()) throw Error(Errc::UnknownSlot, "slot " + std::to_string(id));
  return it->second;
}

void DestructiveStore::journal_locked(JournalOp op, SlotId slot, ByteView value) {
  if (!journal_) return;
  Bytes record;
  put_u32(record, kRecordBody);
  put_u64(record, ++sequence_);
  put_u8(record, static_cast<std::uint8_t>(op));
  put_u64(record, slot);
  put_bytes(record, sha256(value));
  journal_->write(reinterpret_cast<const char*>(record.data()), static_cast<std::streamsize>(record.size()));
  journal_->flush();
}

void DestructiveStore::insert(const SourceCapability& cap, SlotId slot, Bytes value) {
  std::lock_guard lock(mu_);
  auto grant = grants_.find(cap.token());
  if (grant == grants_.end() || !grant->second.contains(slot)) {
    throw Error(Errc::Unauthorized, "capability does not cover slot " + std::to_string(slot));
  }
  auto& s = slot_locked(slot);
  if (s.value) throw Error(Errc::SlotFull, "slot " + std::to_string(slot));
  journal_locked(JournalOp::Insert, slot, value);
  s.value = std::move(value);
  s.permit.reset();
  ++s.history.fills;
}

Presence DestructiveStore::ping(SlotId slot) const {
  std::lock_guard lock(mu_);
  return slot_locked(slot).value ? Presence::Present : Presence::Absent;
}

TakeResult DestructiveStore::take(SlotId slot) {
  std::lock_guard lock(mu_);
  auto& s = slot_locked(slot);
  if (!s.value) throw Error(Errc::SlotEmpty, "slot " + std::to_string(slot));
  Bytes value = std::move(*s.value);
  s.value.reset();
  ++s.history.takes;
  s.permit = PendingPermit{s.history.takes, sha256(value), false};
  journal_locked(JournalOp::Take, slot, value);
  return TakeResult{std::move(value), ReinsertPermit(slot, s.history.takes)};
}

void DestructiveStore::reinsert(const ReinsertPermit& permit, Bytes value) {
  std::lock_guard lock(mu_);
  auto& s = slot_locked(permit.slot_);
  if (!s.permit || s.permit->serial != permit.serial_ || s.permit->used) {
    throw Error(Errc::PermitUsed, "permit for slot " + std::to_string(permit.slot_) + " is spent or stale");
  }
  if (s.value) throw Error(Errc::SlotFull, "slot " + std::to_string(permit.slot_));
  if (sodium_memcmp(sha256(value).data(), s.permit->digest.data(), crypto_hash_sha256_BYTES) != 0) {
    throw Error(Errc::ValueMismatch, "reinserted value differs from the taken value");
  }
  journal_locked(JournalOp::Reinsert, permit.slot_, value);
  s.permit->used = true;
  s.value = std::move(value);
  ++s.history.fills;
  ++s.history.reinserts;
}

SlotHistory DestructiveStore::history(SlotId slot) const {
  std::lock_guard lock(mu_);
  return slot_locked(slot).history;
}

std::map<SlotId, Presence> DestructiveStore::presence() const {
  std::lock_guard lock(mu_);
  std::map<SlotId, Presence> out;
  for (const auto& [id, s] : slots_) out.emplace(id, s.value ? Presence::Present : Presence::Absent);
  return out;
}

Bytes DestructiveStore::state_digest() const {
  std::lock_guard lock(mu_);
  Bytes state;
  for (const auto& [id, s] : slots_) {
    put_u64(state, id);
    put_u8(state, s.value ? 1 : 0);
    if (s.value) put_bytes(state, sha256(*s.value));
    put_u64(state, s.history.fills);
    put_u64(state, s.history.takes);
    put_u64(state, s.history.reinserts);
  }
  return sha256(state);
}

std::map<SlotId, Bytes> DestructiveStore::contents_for_audit() const {
  std::lock_guard lock(mu_);
  std::map<SlotId, Bytes> out;
  for (const auto& [id, s] : slots_) {
    if (s.value) out.emplace(id, *s.value);
  }
  return out;
}

std::vector<JournalRecord> read_journal(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open journal " + path.string());
  Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  ByteReader r(data);
  std::vector<JournalRecord> records;
  while (!r.done()) {
    auto len = r.u32();
    if (len != kRecordBody) throw Error(Errc::MalformedValue, "bad journal record length");
    JournalRecord rec;
    rec.sequence = r.u64();
    auto op = r.u8();
    if (op < 1 || op > 3) throw Error(Errc::MalformedValue, "bad journal op");
    rec.op = static_cast<JournalOp>(op);
    rec.slot = r.u64();
    auto digest = r.take(crypto_hash_sha256_BYTES);
    rec.value_digest.assign(digest.begin(), digest.end());
    records.push_back(std::move(rec));
  }
  return records;
}

std::map<SlotId, Presence> replay_presence(const std::vector<JournalRecord>& records) {
  std::map<SlotId, Presence> out;
  for (const auto& rec : records) {
    out[rec.slot] = rec.op == JournalOp::Take ? Presence::Absent : Presence::Present;
  }
  return out;
}

}  // namespace cryptocubic
