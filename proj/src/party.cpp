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

#include "cryptocubic/party.hpp"

#include <sodium.h>

#include <algorithm>

#include "cryptocubic/error.hpp"

namespace cryptocubic {

std::string scoped_name(std::string_view name, SquareId square) {
  std::string out(name);
  if (square > 1) out += "#" + std::to_string(square);
  return out;
}

void PartyMemory::put(std::string name, Role role, Value value, SquareId square) {
  for (auto& e : entries_) {
    if (e.name == name && e.square == square) {
      e.role = role;
      e.value = std::move(value);
      return;
    }
  }
  entries_.push_back({std::move(name), square, role, std::move(value), ++seq_});
}

const Value* PartyMemory::find(std::string_view name, SquareId square) const {
  for (const auto& e : entries_) {
    if (e.name == name && e.square == square) return &e.value;
  }
  return nullptr;
}

const Value& PartyMemory::at(std::string_view name, SquareId square) const {
  if (const auto* v = find(name, square)) return *v;
  throw Error(Errc::MissingVariable, "no variable " + scoped_name(name, square) + " in memory");
}

bool PartyMemory::erase(std::string_view name, SquareId square) {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [&](const MemoryEntry& e) { return e.name == name && e.square == square; });
  if (it == entries_.end()) return false;
  sodium_memzero(it->value.bytes.data(), it->value.bytes.size());
  entries_.erase(it);
  return true;
}

std::vector<const MemoryEntry*> PartyMemory::ordered() const {
  std::vector<const MemoryEntry*> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(&e);
  std::stable_sort(out.begin(), out.end(), [](const MemoryEntry* a, const MemoryEntry* b) {
    if (a->role != b->role) return a->role < b->role;
    return a->seq < b->seq;
  });
  return out;
}

void DynamicProcedure::bind(std::string name, Value value) {
  if (!running_) throw Error(Errc::InvalidPhase, "procedure already terminated");
  for (auto& [n, v] : bindings_) {
    if (n == name) {
      v = std::move(value);
      return;
    }
  }
  bindings_.emplace_back(std::move(name), std::move(value));
}

bool DynamicProcedure::has(std::string_view name) const {
  return std::any_of(bindings_.begin(), bindings_.end(), [&](const auto& b) { return b.first == name; });
}

const Value& DynamicProcedure::get(std::string_view name) const {
  for (const auto& [n, v] : bindings_) {
    if (n == name) return v;
  }
  throw Error(Errc::InvalidPhase, "procedure holds no " + std::string(name));
}

void DynamicProcedure::terminate() noexcept {
  for (auto& [_, v] : bindings_) sodium_memzero(v.bytes.data(), v.bytes.size());
  bindings_.clear();
  inserted_.clear();
  running_ = false;
}

DynamicProcedure& Party::open_procedure(SquareId square) {
  auto id = next_scope_++;
  return procedures_.emplace(id, DynamicProcedure(id, square)).first->second;
}

DynamicProcedure& Party::procedure(ScopeId id) {
  auto it = procedures_.find(id);
  if (it == procedures_.end()) throw Error(Errc::InvalidPhase, "no running procedure " + std::to_string(id));
  return it->second;
}

void Party::terminate(ScopeId id) {
  auto it = procedures_.find(id);
  if (it == procedures_.end()) return;
  it->second.terminate();
  procedures_.erase(it);
}

}  // namespace cryptocubic
