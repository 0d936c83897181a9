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

#include "cryptocubic/ledger.hpp"

#include <sodium.h>

#include <sstream>

#include "cryptocubic/error.hpp"

namespace cryptocubic {

std::string format_dollars(Cents amount) {
  std::string sign = amount < 0 ? "-" : "";
  if (amount < 0) amount = -amount;
  std::string out = sign + "$" + std::to_string(amount / 100);
  if (auto rest = amount % 100; rest != 0) {
    out += rest < 10 ? ".0" : ".";
    out += std::to_string(rest);
  }
  return out;
}

Bytes ChainTx::signing_payload() const {
  Bytes out = to_bytes("chaintx\n");
  put_u32(out, static_cast<std::uint32_t>(source.size()));
  put_bytes(out, to_bytes(source));
  put_u32(out, static_cast<std::uint32_t>(destination.size()));
  put_bytes(out, to_bytes(destination));
  put_u64(out, static_cast<std::uint64_t>(amount));
  put_u64(out, nonce);
  return out;
}

std::string Ledger::address_id(const Value& address) {
  Bytes digest(crypto_hash_sha256_BYTES);
  crypto_hash_sha256(digest.data(), address.bytes.data(), address.bytes.size());
  return "ms1" + to_hex(ByteView(digest).first(10));
}

std::string Ledger::register_multisig(const Value& address, const Value& vk_u, const Value& vk_s) {
  if (backend_->derive_address(vk_u, vk_s) != address) {
    throw Error(Errc::UnknownAddress, "address is not derived from the supplied legs");
  }
  auto id = address_id(address);
  if (accounts_.contains(id)) throw Error(Errc::DuplicateAddress, id);
  LedgerAccount acct;
  acct.address = id;
  acct.vk_u = vk_u;
  acct.vk_s = vk_s;
  accounts_.emplace(id, std::move(acct));
  return id;
}

bool Ledger::verify_address(const MultiSigBundle& bundle) const {
  return backend_->derive_address(backend_->verify_key(bundle.sig_u), backend_->verify_key(bundle.sig_s)) ==
         bundle.address;
}

LedgerAccount& Ledger::mutable_account(const std::string& address) {
  auto it = accounts_.find(address);
  if (it == accounts_.end()) throw Error(Errc::UnknownAddress, address);
  return it->second;
}

const LedgerAccount& Ledger::account(const std::string& address) const {
  auto it = accounts_.find(address);
  if (it == accounts_.end()) throw Error(Errc::UnknownAddress, address);
  return it->second;
}

Cents Ledger::balance(const std::string& address) const { return account(address).balance; }

void Ledger::fund(const std::string& address, Cents amount) {
  auto& acct = mutable_account(address);
  if (amount <= 0) throw Error(Errc::NonPositiveAmount, std::to_string(amount));
  acct.balance += amount;
}

Value Ledger::sign(const Value& sig_key, const ChainTx& tx) const {
  return backend_->sign(sig_key, tx.signing_payload());
}

void Ledger::credit(const std::string& address, Cents amount) {
  auto [it, inserted] = accounts_.try_emplace(address);
  if (inserted) it->second.address = address;
  it->second.balance += amount;
}

std::uint64_t Ledger::spend(ChainTx tx) {
  auto& src = mutable_account(tx.source);
  if (tx.amount <= 0) throw Error(Errc::NonPositiveAmount, std::to_string(tx.amount));
  if (!src.vk_u || !src.vk_s) throw Error(Errc::MissingSignature, "account has no spending rule");
  if (!tx.sig_u_signature || !tx.sig_s_signature) throw Error(Errc::MissingSignature, "both legs must sign");
  auto payload = tx.signing_payload();
  if (!backend_->verify(*src.vk_u, payload, *tx.sig_u_signature)) throw Error(Errc::BadSignature, "Sig_U leg");
  if (!backend_->verify(*src.vk_s, payload, *tx.sig_s_signature)) throw Error(Errc::BadSignature, "Sig_S leg");
  if (src.used_nonces.contains(tx.nonce)) throw Error(Errc::ReplayedTransaction, "nonce " + std::to_string(tx.nonce));
  if (tx.amount > src.balance) throw Error(Errc::InsufficientFunds, tx.source);

  src.used_nonces.insert(tx.nonce);
  src.balance -= tx.amount;
  tx.tx_id = next_tx_id_++;
  if (confirmation_delay_ == 0) {
    credit(tx.destination, tx.amount);
  } else {
    pending_.push_back({tx.destination, tx.amount, now_ + confirmation_delay_});
  }
  history_.push_back(tx);
  return tx.tx_id;
}

void Ledger::tick(std::uint64_t ticks) {
  now_ += ticks;
  std::vector<Pending> waiting;
  for (auto& p : pending_) {
    if (p.due <= now_) {
      credit(p.destination, p.amount);
    } else {
      waiting.push_back(std::move(p));
    }
  }
  pending_ = std::move(waiting);
}

Cents Ledger::total() const {
  Cents sum = 0;
  for (const auto& [_, acct] : accounts_) sum += acct.balance;
  for (const auto& p : pending_) sum += p.amount;
  return sum;
}

std::string Ledger::dump() const {
  std::ostringstream out;
  for (const auto& [id, acct] : accounts_) out << id << ' ' << acct.balance << '\n';
  return out.str();
}

}  // namespace cryptocubic
