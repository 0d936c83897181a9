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
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cryptocubic/backend.hpp"
#include "cryptocubic/destructive_store.hpp"
#include "cryptocubic/error.hpp"
#include "cryptocubic/ledger.hpp"
#include "cryptocubic/party.hpp"
#include "cryptocubic/rng.hpp"
#include "cryptocubic/trace.hpp"
#include "cryptocubic/transport.hpp"

namespace cryptocubic {

/// cryptocubic: encrypted squares with token authentication and the Es
///              hash check, Kb_Public routed B -> A -> S.
/// bare4:       encrypted squares, Kb_Public sent B -> S, no authentication.
/// baseline3:   plain 2-of-2 MultiSig hand-over; the user holds Sig_U in
///              the clear and the server keeps [Sig_S].
enum class Mode { CryptoCubic, Baseline3, Bare4 };

std::string_view mode_name(Mode m) noexcept;
Mode parse_mode(std::string_view name);

struct Config {
  Mode mode = Mode::CryptoCubic;
  BackendKind backend = BackendKind::Symbolic;
  std::uint64_t seed = 0;
  /// Ticks a party waits for a message before giving up.
  std::uint64_t timeout_ticks = 100;
  /// Keep the sender's Ka in server memory after a completed transfer.
  bool retain_sender_key = true;
  std::uint64_t confirmation_delay = 0;
};

using SessionId = std::uint64_t;

enum class Phase {
  Initiated,
  EaWithdrawn,
  SenderAuthenticated,
  ReceiverAuthenticated,
  HashVerified,
  Completed,
  Aborted,
};

std::string_view phase_name(Phase p) noexcept;

/// Server-side half of a square. Secrets live in server memory under the
/// names recorded here ("Ks", "Hash", the owner's public key).
struct CryptoSquareRecord {
  SquareId id = 0;
  std::string address;  // ledger account id
  std::string owner;    // user name
  std::string owner_pub_name;
  SlotId owner_slot = 0;
  std::string owner_slot_label;  // "Ea", "Eb", or "Sig_S" in baseline3
  bool redeemed = false;
};

struct TransferSession {
  SessionId id = 0;
  SquareId square = 0;
  std::string sender;
  std::string receiver;
  Phase phase = Phase::Initiated;
  std::optional<ReinsertPermit> permit;
  std::optional<ScopeId> scope;
  std::optional<Errc> abort_reason;
};

/// The three-party world: users, the benign server with its
/// self-destructive store, the ledger and the message transport. Every
/// protocol step appends a holdings table to the trace.
class Simulation {
 public:
  explicit Simulation(Config config);

  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  const Config& config() const noexcept { return config_; }
  const Backend& backend() const noexcept { return *backend_; }
  Rng& rng() noexcept { return rng_; }
  Ledger& ledger() noexcept { return ledger_; }
  const Ledger& ledger() const noexcept { return ledger_; }
  Transport& transport() noexcept { return transport_; }
  const Transport& transport() const noexcept { return transport_; }
  DestructiveStore& store() noexcept { return *store_; }
  const DestructiveStore& store() const noexcept { return *store_; }

  Party& server() noexcept { return server_; }
  const Party& server() const noexcept { return server_; }
  Party& user(const std::string& name);
  const Party& party(const std::string& name) const;
  bool has_user(const std::string& name) const { return users_.contains(name); }
  /// Trace column order: the first user, the server, then later users.
  std::vector<const Party*> present_parties() const;

  // Square establishment.
  SquareId setup(const std::string& user);
  SquareId establish_square(const std::string& user);
  SquareId plain_establish(const std::string& user);
  void fund(const std::string& user, Cents amount);

  // Ownership transfer. transfer() drives the whole mode-specific flow and
  // returns the session; an aborted session is reported, not thrown.
  SessionId transfer(const std::string& from, const std::string& to);
  SessionId begin_transfer(const std::string& from, const std::string& to);
  void withdraw_owner_cypher(SessionId id);
  bool authenticate(SessionId id, const std::string& party);
  bool verify_es(SessionId id);
  void complete_transfer(SessionId id);
  SessionId plain_transfer(const std::string& from, const std::string& to);

  // On-chain redemption by the current owner.
  std::uint64_t redeem(const std::string& user, const std::string& destination, Cents amount);
  std::uint64_t plain_redeem(const std::string& user, const std::string& destination, Cents amount);

  const TransferSession& session(SessionId id) const;
  const CryptoSquareRecord& square(SquareId id) const;
  const std::map<SquareId, CryptoSquareRecord>& squares() const noexcept { return squares_; }
  /// Latest square whose ADD the user holds.
  SquareId square_held_by(const std::string& user) const;

  /// Rendered holdings of a party ("S" names the server). Slots render as
  /// "[x]"; running procedures render as "<x,y>" only when asked.
  std::vector<std::string> holdings(const std::string& party, bool include_transients = false) const;
  PartySnapshot snapshot(const std::string& party) const;

  const std::vector<TraceEvent>& trace() const noexcept { return trace_; }
  std::string trace_text() const { return render_trace(trace_); }

 private:
  struct SlotInfo {
    std::string label;
    SquareId square = 0;
  };

  Party& ensure_user(const std::string& name, bool* joined = nullptr);
  bool ensure_keys(Party& user);
  void record(std::string label);
  std::vector<std::string> render(const Party& p, bool include_transients) const;

  TransferSession& mutable_session(SessionId id);
  CryptoSquareRecord& mutable_square(SquareId id);
  void advance(TransferSession& s, Phase next);
  void abort_session(TransferSession& s, Errc reason);
  SlotId store_in_new_slot(DynamicProcedure& proc, SquareId square, const std::string& label, const Value& v);
  Message expect(const std::string& to, MessageType type, SessionId session, Errc on_timeout);
  void send(MessageType type, SessionId session, const std::string& from, const std::string& to, Value payload,
            bool confidential = false);
  void require_mode(bool ok, std::string_view what) const;

  Config config_;
  std::unique_ptr<Backend> backend_;
  Rng rng_;
  Ledger ledger_;
  Transport transport_;
  std::unique_ptr<DestructiveStore> store_;
  Party server_{"S", true};
  std::map<std::string, Party> users_;
  std::vector<std::string> joined_;
  std::map<SquareId, CryptoSquareRecord> squares_;
  std::map<SlotId, SlotInfo> slots_;
  std::map<SessionId, TransferSession> sessions_;
  std::set<Value> consumed_tokens_;
  std::vector<TraceEvent> trace_;
  SquareId next_square_ = 1;
  SlotId next_slot_ = 1;
  SessionId next_session_ = 1;
};

// Variable naming for user X: Kx / Kx_Public, owner cypher Ex, and the
// challenge triple Token_X / Et_X / Token_X2.
std::string private_key_name(std::string_view user);
std::string public_key_name(std::string_view user);
std::string owner_cypher_name(std::string_view user);
std::string token_name(std::string_view user);
std::string challenge_name(std::string_view user);
std::string response_name(std::string_view user);

}  // namespace cryptocubic
