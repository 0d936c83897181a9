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
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cryptocubic/backend.hpp"
#include "cryptocubic/value.hpp"

namespace cryptocubic {

using Cents = std::int64_t;

/// "$10" for 1000 cents, "$10.05" for 1005.
std::string format_dollars(Cents amount);

struct LedgerAccount {
  std::string address;
  Cents balance = 0;
  // Present for MultiSig accounts; external accounts can receive but not spend.
  std::optional<Value> vk_u;
  std::optional<Value> vk_s;
  std::set<std::uint64_t> used_nonces;
};

struct ChainTx {
  std::string source;
  std::string destination;
  Cents amount = 0;
  std::uint64_t nonce = 0;
  std::optional<Value> sig_u_signature;
  std::optional<Value> sig_s_signature;
  std::uint64_t tx_id = 0;

  /// Bytes both legs sign: source, destination, amount and nonce.
  Bytes signing_payload() const;
};

/// Account-balance stand-in for the chain. Spending from a MultiSig address
/// needs valid signatures under both legs over (source, destination, amount,
/// nonce); a nonce is accepted once per account.
class Ledger {
 public:
  explicit Ledger(const Backend& backend, std::uint64_t confirmation_delay = 0)
      : backend_(&backend), confirmation_delay_(confirmation_delay) {}

  /// Printable account id for an address value.
  static std::string address_id(const Value& address);

  std::string register_multisig(const Value& address, const Value& vk_u, const Value& vk_s);
  bool verify_address(const MultiSigBundle& bundle) const;

  void fund(const std::string& address, Cents amount);
  Value sign(const Value& sig_key, const ChainTx& tx) const;
  std::uint64_t spend(ChainTx tx);
  /// Advances the confirmation clock, crediting transfers whose delay elapsed.
  void tick(std::uint64_t ticks = 1);

  bool contains(const std::string& address) const { return accounts_.contains(address); }
  const LedgerAccount& account(const std::string& address) const;
  Cents balance(const std::string& address) const;
  /// Sum of balances plus transfers awaiting confirmation.
  Cents total() const;
  const std::vector<ChainTx>& history() const noexcept { return history_; }

  /// "address amount_cents" lines sorted by address.
  std::string dump() const;

 private:
  struct Pending {
    std::string destination;
    Cents amount;
    std::uint64_t due;
  };

  LedgerAccount& mutable_account(const std::string& address);
  void credit(const std::string& address, Cents amount);

  const Backend* backend_;
  std::uint64_t confirmation_delay_;
  std::uint64_t now_ = 0;
  std::uint64_t next_tx_id_ = 1;
  std::map<std::string, LedgerAccount> accounts_;
  std::vector<Pending> pending_;
  std::vector<ChainTx> history_;
};

}  // namespace cryptocubic
