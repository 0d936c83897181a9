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

#include "cryptocubic/protocol.hpp"

#include <algorithm>
#include <cctype>

namespace cryptocubic {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string user_label(std::string_view user) { return "User_" + std::string(user); }

constexpr const char* kServer = "S";
constexpr const char* kServerLabel = "Server_S";

}  // namespace

std::string private_key_name(std::string_view user) { return "K" + lower(user); }
std::string public_key_name(std::string_view user) { return private_key_name(user) + "_Public"; }
std::string owner_cypher_name(std::string_view user) { return "E" + lower(user); }
std::string token_name(std::string_view user) { return "Token_" + std::string(user); }
std::string challenge_name(std::string_view user) { return "Et_" + std::string(user); }
std::string response_name(std::string_view user) { return "Token_" + std::string(user) + "2"; }

std::string_view mode_name(Mode m) noexcept {
  switch (m) {
    case Mode::CryptoCubic: return "cryptocubic";
    case Mode::Baseline3: return "baseline3";
    case Mode::Bare4: return "bare4";
  }
  return "unknown";
}

Mode parse_mode(std::string_view name) {
  if (name == "cryptocubic") return Mode::CryptoCubic;
  if (name == "baseline3") return Mode::Baseline3;
  if (name == "bare4") return Mode::Bare4;
  throw Error(Errc::SyntaxError, "unknown mode '" + std::string(name) + "'");
}

std::string_view phase_name(Phase p) noexcept {
  switch (p) {
    case Phase::Initiated: return "initiated";
    case Phase::EaWithdrawn: return "ea_withdrawn";
    case Phase::SenderAuthenticated: return "sender_authenticated";
    case Phase::ReceiverAuthenticated: return "receiver_authenticated";
    case Phase::HashVerified: return "hash_verified";
    case Phase::Completed: return "completed";
    case Phase::Aborted: return "aborted";
  }
  return "unknown";
}

Simulation::Simulation(Config config)
    : config_(config),
      backend_(make_backend(config.backend)),
      rng_(config.seed),
      ledger_(*backend_, config.confirmation_delay),
      transport_(config.timeout_ticks),
      store_(std::make_unique<DestructiveStore>()) {}

// ---------------------------------------------------------------------------
// Parties and rendering

Party& Simulation::user(const std::string& name) {
  auto it = users_.find(name);
  if (it == users_.end()) throw Error(Errc::UnknownParty, name);
  return it->second;
}

const Party& Simulation::party(const std::string& name) const {
  if (name == kServer || name == "SERVER_S") return server_;
  auto key = name.starts_with("USER_") ? name.substr(5) : name;
  auto it = users_.find(key);
  if (it == users_.end()) throw Error(Errc::UnknownParty, name);
  return it->second;
}

Party& Simulation::ensure_user(const std::string& name, bool* joined) {
  if (name.empty() || name == kServer) throw Error(Errc::UnknownParty, "invalid user name '" + name + "'");
  auto [it, inserted] = users_.try_emplace(name, name, false);
  if (inserted) joined_.push_back(name);
  if (joined) *joined = inserted;
  return it->second;
}

bool Simulation::ensure_keys(Party& u) {
  auto priv = private_key_name(u.name());
  if (u.memory().contains(priv)) return false;
  auto pair = backend_->gen_asym_pair(rng_);
  u.memory().put(priv, Role::PrivateKey, pair.private_key);
  u.memory().put(public_key_name(u.name()), Role::PublicKey, pair.public_key);
  return true;
}

std::vector<const Party*> Simulation::present_parties() const {
  std::vector<const Party*> out;
  for (std::size_t i = 0; i < joined_.size(); ++i) {
    out.push_back(&users_.at(joined_[i]));
    if (i == 0) out.push_back(&server_);
  }
  return out;
}

std::vector<std::string> Simulation::render(const Party& p, bool include_transients) const {
  std::vector<std::string> lines;
  std::set<std::string> shown_by_procedure;
  if (include_transients) {
    for (const auto& [_, proc] : p.procedures()) {
      std::string line = "<";
      for (std::size_t i = 0; i < proc.bindings().size(); ++i) {
        if (i > 0) line += ",";
        line += proc.bindings()[i].first;
      }
      line += ">";
      for (const auto& label : proc.inserted_slots()) {
        line += " -- [" + scoped_name(label, proc.square()) + "]";
        shown_by_procedure.insert(scoped_name(label, proc.square()));
      }
      lines.push_back(std::move(line));
    }
  }
  if (p.is_server()) {
    for (const auto& [id, info] : slots_) {
      auto label = scoped_name(info.label, info.square);
      if (store_->ping(id) == Presence::Present && !shown_by_procedure.contains(label)) {
        lines.push_back("[" + label + "]");
      }
    }
  }
  for (const auto* e : p.memory().ordered()) {
    auto line = scoped_name(e->name, e->square);
    if (e->role == Role::Address) {
      auto id = Ledger::address_id(e->value);
      if (ledger_.contains(id) && ledger_.balance(id) > 0) line += " (" + format_dollars(ledger_.balance(id)) + ")";
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

std::vector<std::string> Simulation::holdings(const std::string& name, bool include_transients) const {
  return render(party(name), include_transients);
}

PartySnapshot Simulation::snapshot(const std::string& name) const {
  const auto& p = party(name);
  PartySnapshot snap;
  snap.party = p.column();
  for (const auto& e : p.memory().entries()) snap.terms.push_back(e.value);
  if (p.is_server()) {
    for (const auto& [id, _] : slots_) snap.presence.emplace(id, store_->ping(id));
  }
  return snap;
}

void Simulation::record(std::string label) {
  TraceEvent e;
  e.step = trace_.size() + 1;
  e.label = std::move(label);
  for (const auto* p : present_parties()) {
    e.columns.push_back({p->column(), render(*p, true)});
    e.snapshots.push_back(snapshot(p->is_server() ? kServer : p->name()));
  }
  for (const auto& [_, bytes] : store_->contents_for_audit()) e.slot_contents.push_back(decode(bytes));
  e.wire_records = transport_.transcript().size();
  trace_.push_back(std::move(e));
}

// ---------------------------------------------------------------------------
// Plumbing

void Simulation::send(MessageType type, SessionId session, const std::string& from, const std::string& to,
                      Value payload, bool confidential) {
  transport_.send(Message{type, session, from, to, std::move(payload), confidential});
}

Message Simulation::expect(const std::string& to, MessageType type, SessionId session, Errc on_timeout) {
  auto m = transport_.receive(to, type, session);
  if (!m) {
    throw Error(on_timeout, std::string(message_type_name(type)) + " for " + to + " never arrived");
  }
  return *m;
}

void Simulation::require_mode(bool ok, std::string_view what) const {
  if (!ok) throw Error(Errc::ModeMismatch, std::string(what) + " is not available in mode " +
                                               std::string(mode_name(config_.mode)));
}

SlotId Simulation::store_in_new_slot(DynamicProcedure& proc, SquareId square, const std::string& label,
                                     const Value& v) {
  auto slot = next_slot_++;
  auto cap = store_->grant_source({slot});
  store_->insert(cap, slot, encode(v));
  slots_.emplace(slot, SlotInfo{label, square});
  proc.note_slot_insert(label);
  return slot;
}

const TransferSession& Simulation::session(SessionId id) const {
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(Errc::UnknownSession, std::to_string(id));
  return it->second;
}

TransferSession& Simulation::mutable_session(SessionId id) {
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(Errc::UnknownSession, std::to_string(id));
  return it->second;
}

const CryptoSquareRecord& Simulation::square(SquareId id) const {
  auto it = squares_.find(id);
  if (it == squares_.end()) throw Error(Errc::UnknownSquare, std::to_string(id));
  return it->second;
}

CryptoSquareRecord& Simulation::mutable_square(SquareId id) {
  auto it = squares_.find(id);
  if (it == squares_.end()) throw Error(Errc::UnknownSquare, std::to_string(id));
  return it->second;
}

SquareId Simulation::square_held_by(const std::string& name) const {
  if (!has_user(name)) throw Error(Errc::UnknownSquare, name + " holds no square");
  const auto& u = party(name);
  SquareId latest = 0;
  for (const auto& e : u.memory().entries()) {
    if (e.name == "ADD" && squares_.contains(e.square)) latest = std::max(latest, e.square);
  }
  if (latest == 0) throw Error(Errc::UnknownSquare, name + " holds no square");
  return latest;
}

void Simulation::advance(TransferSession& s, Phase next) {
  if (s.phase == Phase::Aborted || s.phase == Phase::Completed || next <= s.phase) {
    throw Error(Errc::InvalidPhase, "session " + std::to_string(s.id) + " cannot go from " +
                                        std::string(phase_name(s.phase)) + " to " + std::string(phase_name(next)));
  }
  s.phase = next;
}

void Simulation::abort_session(TransferSession& s, Errc reason) {
  const auto& rec = square(s.square);
  bool restored = false;
  if (s.scope) {
    auto& proc = server_.procedure(*s.scope);
    if (s.permit && proc.has(rec.owner_slot_label)) {
      store_->reinsert(*s.permit, encode(proc.get(rec.owner_slot_label)));
      restored = true;
    }
    server_.terminate(*s.scope);
    s.scope.reset();
  }
  s.permit.reset();
  if (reason == Errc::KaMismatch) server_.memory().erase(private_key_name(s.sender));
  s.phase = Phase::Aborted;
  s.abort_reason = reason;
  record("transfer aborted (" + std::string(errc_name(reason)) + ")" +
         (restored ? "; " + rec.owner_slot_label + " is placed back into the self-destructive database" : ""));
}

// ---------------------------------------------------------------------------
// Establishment

SquareId Simulation::setup(const std::string& user) {
  return config_.mode == Mode::Baseline3 ? plain_establish(user) : establish_square(user);
}

SquareId Simulation::establish_square(const std::string& name) {
  require_mode(config_.mode != Mode::Baseline3, "encrypted square setup");
  auto& u = ensure_user(name);
  const auto priv_name = private_key_name(name);
  const auto pub_name = public_key_name(name);
  const auto ea_name = owner_cypher_name(name);
  if (ensure_keys(u)) record(user_label(name) + " produces (" + priv_name + ", " + pub_name + ")");

  const auto sq = next_square_++;
  send(MessageType::PublicKey, 0, name, kServer, u.memory().at(pub_name));
  auto pub = expect(kServer, MessageType::PublicKey, 0, Errc::TransportFailure).payload;
  bool had_pub = server_.memory().contains(pub_name);
  server_.memory().put(pub_name, Role::PublicKey, pub);
  auto ks = backend_->gen_sym_key(rng_);
  server_.memory().put("Ks", Role::SymmetricKey, ks.key, sq);
  record(user_label(name) + " sends " + pub_name + " to " + kServerLabel + ", which creates Ks");

  auto& proc = server_.open_procedure(sq);
  const auto scope = proc.id();
  proc.bind("Ks", ks.key);
  proc.bind(pub_name, pub);
  record(std::string(kServerLabel) + " loads Ks and " + pub_name + " into a dynamic procedure");

  auto bundle = backend_->gen_multisig(rng_);
  proc.bind("Sig_U", bundle.sig_u);
  proc.bind("Sig_S", bundle.sig_s);
  proc.bind("ADD", bundle.address);
  record("procedure generates Sig_U, Sig_S and ADD");

  auto ea = backend_->asym_encrypt(rng_, pub, bundle.sig_u);
  auto es = backend_->sym_encrypt(rng_, ks.key, bundle.sig_s);
  proc.bind(ea_name, ea);
  proc.bind("Es", es);
  record("procedure encrypts Sig_U into " + ea_name + " and Sig_S into Es");

  if (config_.mode == Mode::CryptoCubic) {
    server_.memory().put("Hash", Role::Digest, backend_->hash(es), sq);
    record(std::string(kServerLabel) + " stores Hash of Es");
  }

  send(MessageType::SquareDelivery, 0, kServer, name, make_tuple({es, bundle.address}), true);
  auto delivery = transport_.receive(name, MessageType::SquareDelivery, 0);
  if (!delivery) {
    server_.terminate(scope);
    server_.memory().erase("Ks", sq);
    server_.memory().erase("Hash", sq);
    if (!had_pub) server_.memory().erase(pub_name);
    throw Error(Errc::TransportFailure, "Es and ADD never reached " + user_label(name));
  }
  auto parts = open_tuple(delivery->payload);
  u.memory().put("Es", Role::SquareCypher, parts.at(0), sq);
  u.memory().put("ADD", Role::Address, parts.at(1), sq);
  record("procedure delivers Es and ADD to " + user_label(name));

  auto& running = server_.procedure(scope);
  auto address = ledger_.register_multisig(bundle.address, backend_->verify_key(bundle.sig_u),
                                           backend_->verify_key(bundle.sig_s));
  auto slot = store_in_new_slot(running, sq, ea_name, ea);
  record("procedure stores " + ea_name + " in the self-destructive database");

  server_.terminate(scope);
  squares_.emplace(sq, CryptoSquareRecord{sq, address, name, pub_name, slot, ea_name, false});
  record("procedure terminates; " + user_label(name) + " and " + kServerLabel + " form a CryptoSquare");
  return sq;
}

SquareId Simulation::plain_establish(const std::string& name) {
  require_mode(config_.mode == Mode::Baseline3, "plain MultiSig setup");
  auto& u = ensure_user(name);
  const auto sq = next_square_++;

  auto& proc = server_.open_procedure(sq);
  const auto scope = proc.id();
  auto bundle = backend_->gen_multisig(rng_);
  proc.bind("Sig_U", bundle.sig_u);
  proc.bind("Sig_S", bundle.sig_s);
  proc.bind("ADD", bundle.address);
  auto address = ledger_.register_multisig(bundle.address, backend_->verify_key(bundle.sig_u),
                                           backend_->verify_key(bundle.sig_s));
  record(std::string(kServerLabel) + " creates Sig_U, Sig_S and ADD in a dynamic procedure");

  send(MessageType::SigDelivery, 0, kServer, name, make_tuple({bundle.sig_u, bundle.address}), true);
  auto delivery = transport_.receive(name, MessageType::SigDelivery, 0);
  if (!delivery) {
    server_.terminate(scope);
    throw Error(Errc::TransportFailure, "Sig_U and ADD never reached " + user_label(name));
  }
  auto parts = open_tuple(delivery->payload);
  u.memory().put("Sig_U", Role::SigningKey, parts.at(0), sq);
  u.memory().put("ADD", Role::Address, parts.at(1), sq);
  record(std::string(kServerLabel) + " transfers Sig_U and ADD to " + user_label(name));

  auto slot = store_in_new_slot(server_.procedure(scope), sq, "Sig_S", bundle.sig_s);
  record("procedure stores Sig_S in the self-destructive database");

  server_.terminate(scope);
  squares_.emplace(sq, CryptoSquareRecord{sq, address, name, "", slot, "Sig_S", false});
  record("procedure terminates");
  return sq;
}

void Simulation::fund(const std::string& name, Cents amount) {
  auto sq = square_held_by(name);
  ledger_.fund(square(sq).address, amount);
  record(user_label(name) + " funds ADD with " + format_dollars(amount) + " on-chain");
}

// ---------------------------------------------------------------------------
// Transfer

SessionId Simulation::transfer(const std::string& from, const std::string& to) {
  if (config_.mode == Mode::Baseline3) return plain_transfer(from, to);
  auto id = begin_transfer(from, to);
  withdraw_owner_cypher(id);
  if (session(id).phase == Phase::Aborted) return id;
  if (config_.mode == Mode::CryptoCubic) {
    if (!authenticate(id, from) || !authenticate(id, to) || !verify_es(id)) return id;
  }
  complete_transfer(id);
  return id;
}

SessionId Simulation::begin_transfer(const std::string& from, const std::string& to) {
  require_mode(config_.mode != Mode::Baseline3, "encrypted transfer");
  if (from == to) throw Error(Errc::UnknownParty, "cannot transfer to oneself");
  auto sq = square_held_by(from);
  auto& sender = user(from);
  const auto& rec = square(sq);
  if (rec.owner != from) throw Error(Errc::NotOwner, from + " does not own square " + std::to_string(sq));
  if (rec.redeemed) throw Error(Errc::NotOwner, "square " + std::to_string(sq) + " was already redeemed");

  const auto sid = next_session_++;
  bool joined = false;
  auto& receiver = ensure_user(to, &joined);
  if (joined) record(user_label(from) + " encounters " + user_label(to));

  send(MessageType::SquareHandoff, sid, from, to,
       make_tuple({sender.memory().at("Es", sq), sender.memory().at("ADD", sq)}));
  auto handoff = expect(to, MessageType::SquareHandoff, sid, Errc::TransportFailure);
  auto parts = open_tuple(handoff.payload);
  receiver.memory().put("Es", Role::SquareCypher, parts.at(0), sq);
  receiver.memory().put("ADD", Role::Address, parts.at(1), sq);
  record(user_label(from) + " transfers Es and ADD to " + user_label(to));

  const auto pub_name = public_key_name(to);
  if (ensure_keys(receiver)) {
    record(user_label(to) + " produces (" + private_key_name(to) + ", " + pub_name + ")");
  }
  if (config_.mode == Mode::Bare4) {
    send(MessageType::PublicKey, sid, to, kServer, receiver.memory().at(pub_name));
    auto m = expect(kServer, MessageType::PublicKey, sid, Errc::Timeout);
    server_.memory().put(pub_name, Role::PublicKey, m.payload);
    record(user_label(to) + " transfers " + pub_name + " to " + kServerLabel);
  } else {
    send(MessageType::PublicKey, sid, to, from, receiver.memory().at(pub_name));
    auto m = expect(from, MessageType::PublicKey, sid, Errc::Timeout);
    sender.memory().put(pub_name, Role::PublicKey, m.payload);
    record(user_label(to) + " transfers " + pub_name + " to " + user_label(from));
    send(MessageType::PublicKey, sid, from, kServer, m.payload);
    auto fwd = expect(kServer, MessageType::PublicKey, sid, Errc::Timeout);
    server_.memory().put(pub_name, Role::PublicKey, fwd.payload);
    record(user_label(from) + " transfers " + pub_name + " to " + kServerLabel);
  }

  sessions_.emplace(sid, TransferSession{sid, sq, from, to, Phase::Initiated, std::nullopt, std::nullopt, std::nullopt});
  return sid;
}

void Simulation::withdraw_owner_cypher(SessionId id) {
  auto& s = mutable_session(id);
  if (s.phase != Phase::Initiated) throw Error(Errc::InvalidPhase, "owner cypher already withdrawn");
  const auto& rec = square(s.square);

  send(MessageType::Approve, id, s.sender, kServer, data_value("approve " + std::to_string(id)));
  if (!transport_.receive(kServer, MessageType::Approve, id)) {
    abort_session(s, Errc::Timeout);
    return;
  }

  auto& proc = server_.open_procedure(s.square);
  s.scope = proc.id();
  try {
    auto taken = store_->take(rec.owner_slot);
    proc.bind(rec.owner_slot_label, decode(taken.value));
    s.permit = taken.permit;
  } catch (const Error& e) {
    if (e.code() != Errc::SlotEmpty) throw;
    abort_session(s, Errc::SlotEmpty);
    return;
  }
  advance(s, Phase::EaWithdrawn);
  record(std::string(kServerLabel) + " receives permission from " + user_label(s.sender) + " and withdraws " +
         rec.owner_slot_label + " into a dynamic procedure");

  // The sender answers the key request with its private key.
  const auto priv_name = private_key_name(s.sender);
  send(MessageType::KeyRequest, id, kServer, s.sender, data_value("request " + priv_name));
  if (transport_.receive(s.sender, MessageType::KeyRequest, id)) {
    send(MessageType::KeyDelivery, id, s.sender, kServer, user(s.sender).memory().at(priv_name), true);
  }
  auto key = transport_.receive(kServer, MessageType::KeyDelivery, id);
  if (!key) {
    abort_session(s, Errc::Timeout);
    return;
  }
  server_.memory().put(priv_name, Role::PrivateKey, key->payload);
  record(user_label(s.sender) + " sends a copy of " + priv_name + " to " + kServerLabel);

  if (!backend_->matches(key->payload, server_.memory().at(rec.owner_pub_name))) {
    abort_session(s, Errc::KaMismatch);
  }
}

bool Simulation::authenticate(SessionId id, const std::string& subject) {
  require_mode(config_.mode == Mode::CryptoCubic, "token authentication");
  auto& s = mutable_session(id);
  if (subject != s.sender && subject != s.receiver) throw Error(Errc::UnknownParty, subject + " is not in the session");
  const bool is_sender = subject == s.sender;
  if (s.phase != (is_sender ? Phase::EaWithdrawn : Phase::SenderAuthenticated)) {
    throw Error(Errc::InvalidPhase, "cannot authenticate " + subject + " in phase " + std::string(phase_name(s.phase)));
  }
  auto& u = user(subject);
  const auto tok = token_name(subject);
  const auto chal = challenge_name(subject);
  const auto resp = response_name(subject);

  auto token = backend_->gen_token(rng_);
  server_.memory().put(tok, Role::AuthToken, token.value, s.square);
  record(std::string(kServerLabel) + " creates " + tok);

  auto et = backend_->asym_encrypt(rng_, server_.memory().at(public_key_name(subject)), token.value);
  server_.memory().put(chal, Role::AuthToken, et, s.square);
  record(std::string(kServerLabel) + " encrypts " + tok + " with " + public_key_name(subject) + " into " + chal);

  send(MessageType::Challenge, id, kServer, subject, et);
  if (auto c = transport_.receive(subject, MessageType::Challenge, id)) {
    u.memory().put(chal, Role::AuthToken, c->payload, s.square);
    const auto* own = u.memory().find(private_key_name(subject));
    auto answer = own ? backend_->try_asym_decrypt(*own, c->payload) : std::nullopt;
    if (answer) u.memory().put(resp, Role::AuthToken, *answer, s.square);
    send(MessageType::ChallengeResponse, id, subject, kServer, answer.value_or(data_value("undecryptable")));
  }
  auto reply = transport_.receive(kServer, MessageType::ChallengeResponse, id);
  if (!reply) {
    abort_session(s, Errc::Timeout);
    return false;
  }
  server_.memory().put(resp, Role::AuthToken, reply->payload, s.square);
  const bool replayed = consumed_tokens_.contains(reply->payload);
  const bool ok = !replayed && reply->payload == token.value;
  consumed_tokens_.insert(token.value);
  record(user_label(subject) + " decrypts " + chal + " into " + resp + "; " + kServerLabel + " compares it with " + tok);
  if (!ok) {
    abort_session(s, replayed ? Errc::TokenReplay : Errc::AuthFailure);
    return false;
  }
  advance(s, is_sender ? Phase::SenderAuthenticated : Phase::ReceiverAuthenticated);
  return true;
}

bool Simulation::verify_es(SessionId id) {
  require_mode(config_.mode == Mode::CryptoCubic, "Es verification");
  auto& s = mutable_session(id);
  if (s.phase != Phase::ReceiverAuthenticated) {
    throw Error(Errc::InvalidPhase, "Es verification needs both parties authenticated");
  }
  auto& receiver = user(s.receiver);

  send(MessageType::HashDelivery, id, kServer, s.receiver, server_.memory().at("Hash", s.square));
  auto hash = transport_.receive(s.receiver, MessageType::HashDelivery, id);
  if (!hash) {
    abort_session(s, Errc::Timeout);
    return false;
  }
  receiver.memory().put("Hash", Role::Digest, hash->payload, s.square);
  record(std::string(kServerLabel) + " transfers Hash to " + user_label(s.receiver));

  auto hash2 = backend_->hash(receiver.memory().at("Es", s.square));
  receiver.memory().put("Hash2", Role::Digest, hash2, s.square);
  record(user_label(s.receiver) + " hashes Es into Hash2");

  const bool ok = hash2 == hash->payload;
  record(user_label(s.receiver) + (ok ? " confirms Hash equals Hash2" : " finds Hash differs from Hash2"));
  send(MessageType::VerifyResult, id, s.receiver, kServer, data_value(ok ? "match" : "mismatch"));
  auto verdict = transport_.receive(kServer, MessageType::VerifyResult, id);
  if (!verdict) {
    abort_session(s, Errc::Timeout);
    return false;
  }
  if (verdict->payload != data_value("match")) {
    abort_session(s, Errc::CounterfeitCypher);
    return false;
  }
  advance(s, Phase::HashVerified);
  return true;
}

void Simulation::complete_transfer(SessionId id) {
  auto& s = mutable_session(id);
  const auto ready = config_.mode == Mode::CryptoCubic ? Phase::HashVerified : Phase::EaWithdrawn;
  if (s.phase != ready) {
    throw Error(Errc::InvalidPhase, "cannot complete from phase " + std::string(phase_name(s.phase)));
  }
  auto& rec = mutable_square(s.square);
  auto& proc = server_.procedure(*s.scope);
  const auto priv_name = private_key_name(s.sender);
  const auto pub_name = public_key_name(s.receiver);
  const auto eb_name = owner_cypher_name(s.receiver);

  proc.bind(priv_name, server_.memory().at(priv_name));
  record("procedure loads " + priv_name + " from server memory");

  auto sig_u = backend_->try_asym_decrypt(proc.get(priv_name), proc.get(rec.owner_slot_label));
  if (!sig_u) {
    abort_session(s, Errc::KaMismatch);
    return;
  }
  proc.bind("Sig_U", *sig_u);
  record("procedure decrypts Sig_U from " + rec.owner_slot_label + " using " + priv_name);

  // Extra guard: refuse to re-encrypt a key that does not
  // belong to this square's address.
  const auto& account = ledger_.account(rec.address);
  if (sig_u->kind != Kind::SigKey || backend_->verify_key(*sig_u) != account.vk_u) {
    abort_session(s, Errc::SignatureKeyMismatch);
    return;
  }

  proc.bind(pub_name, server_.memory().at(pub_name));
  record("procedure loads " + pub_name + " from server memory");

  auto eb = backend_->asym_encrypt(rng_, proc.get(pub_name), *sig_u);
  proc.bind(eb_name, eb);
  record("procedure encrypts " + eb_name + " from Sig_U using " + pub_name);

  auto slot = store_in_new_slot(proc, s.square, eb_name, eb);
  record("procedure stores " + eb_name + " in the self-destructive database");

  rec.owner = s.receiver;
  rec.owner_pub_name = pub_name;
  rec.owner_slot = slot;
  rec.owner_slot_label = eb_name;
  s.permit.reset();
  server_.terminate(*s.scope);
  s.scope.reset();
  if (!config_.retain_sender_key) server_.memory().erase(priv_name);
  for (const auto& to : {s.sender, s.receiver}) {
    send(MessageType::Notify, id, kServer, to, data_value("transfer complete"));
    transport_.receive(to, MessageType::Notify, id);
  }
  advance(s, Phase::Completed);
  record("procedure terminates; " + user_label(s.sender) + " and " + user_label(s.receiver) + " are notified");
}

SessionId Simulation::plain_transfer(const std::string& from, const std::string& to) {
  require_mode(config_.mode == Mode::Baseline3, "plain MultiSig transfer");
  if (from == to) throw Error(Errc::UnknownParty, "cannot transfer to oneself");
  auto sq = square_held_by(from);
  auto& sender = user(from);
  if (!sender.memory().contains("Sig_U", sq)) throw Error(Errc::NotOwner, from + " holds no Sig_U");

  const auto sid = next_session_++;
  bool joined = false;
  auto& receiver = ensure_user(to, &joined);
  if (joined) record(user_label(from) + " encounters " + user_label(to));

  send(MessageType::SquareHandoff, sid, from, to,
       make_tuple({sender.memory().at("Sig_U", sq), sender.memory().at("ADD", sq)}));
  auto handoff = expect(to, MessageType::SquareHandoff, sid, Errc::TransportFailure);
  auto parts = open_tuple(handoff.payload);
  receiver.memory().put("Sig_U", Role::SigningKey, parts.at(0), sq);
  receiver.memory().put("ADD", Role::Address, parts.at(1), sq);
  mutable_square(sq).owner = to;
  sessions_.emplace(sid, TransferSession{sid, sq, from, to, Phase::Completed, std::nullopt, std::nullopt, std::nullopt});
  record(user_label(to) + " receives ADD and Sig_U from " + user_label(from));
  return sid;
}

// ---------------------------------------------------------------------------
// Redemption

std::uint64_t Simulation::redeem(const std::string& name, const std::string& destination, Cents amount) {
  if (config_.mode == Mode::Baseline3) return plain_redeem(name, destination, amount);
  auto& u = user(name);
  const auto sq = square_held_by(name);
  auto& rec = mutable_square(sq);
  if (store_->ping(rec.owner_slot) == Presence::Absent) {
    throw Error(Errc::SlotEmpty, "[" + rec.owner_slot_label + "] is not in the self-destructive database");
  }
  if (amount <= 0) throw Error(Errc::NonPositiveAmount, std::to_string(amount));
  if (ledger_.balance(rec.address) < amount) throw Error(Errc::InsufficientFunds, rec.address);

  const auto sid = next_session_++;
  auto& sproc = server_.open_procedure(sq);
  auto& uproc = u.open_procedure(sq);
  const auto sscope = sproc.id();
  const auto uscope = uproc.id();
  auto close = [&] {
    server_.terminate(sscope);
    u.terminate(uscope);
  };

  try {
    send(MessageType::RedeemRequest, sid, name, kServer, data_value("redeem"));
    expect(kServer, MessageType::RedeemRequest, sid, Errc::Timeout);

    // Challenge against the current owner's key; tokens stay transient.
    auto token = backend_->gen_token(rng_);
    auto et = backend_->asym_encrypt(rng_, server_.memory().at(rec.owner_pub_name), token.value);
    sproc.bind(token_name(name), token.value);
    sproc.bind(challenge_name(name), et);
    send(MessageType::Challenge, sid, kServer, name, et);
    auto c = expect(name, MessageType::Challenge, sid, Errc::Timeout);
    uproc.bind(challenge_name(name), c.payload);
    const auto* own = u.memory().find(private_key_name(name));
    auto answer = own ? backend_->try_asym_decrypt(*own, c.payload) : std::nullopt;
    if (answer) uproc.bind(response_name(name), *answer);
    send(MessageType::ChallengeResponse, sid, name, kServer, answer.value_or(data_value("undecryptable")));
    auto reply = expect(kServer, MessageType::ChallengeResponse, sid, Errc::Timeout);
    const bool replayed = consumed_tokens_.contains(reply.payload);
    consumed_tokens_.insert(token.value);
    if (replayed || reply.payload != token.value) {
      throw Error(Errc::AuthFailure, user_label(name) + " is not the owner of square " + std::to_string(sq));
    }
    sproc.bind(response_name(name), reply.payload);
    record(std::string(kServerLabel) + " authenticates " + user_label(name) + " as the owner of ADD");

    auto taken = store_->take(rec.owner_slot);
    auto cypher = decode(taken.value);
    sproc.bind(rec.owner_slot_label, cypher);
    send(MessageType::RedeemDelivery, sid, kServer, name, make_tuple({cypher, server_.memory().at("Ks", sq)}), true);
    server_.terminate(sscope);
    auto delivery = expect(name, MessageType::RedeemDelivery, sid, Errc::Timeout);
    auto parts = open_tuple(delivery.payload);
    uproc.bind(rec.owner_slot_label, parts.at(0));
    uproc.bind("Ks", parts.at(1));
    record(std::string(kServerLabel) + " sends " + rec.owner_slot_label + " and Ks to " + user_label(name) + "; [" +
           rec.owner_slot_label + "] is deleted");

    auto sig_u = backend_->asym_decrypt(u.memory().at(private_key_name(name)), parts.at(0));
    auto sig_s = backend_->sym_decrypt(parts.at(1), u.memory().at("Es", sq));
    uproc.bind("Sig_U", sig_u);
    uproc.bind("Sig_S", sig_s);
    record(user_label(name) + " decrypts Sig_U and Sig_S");

    ChainTx tx{rec.address, destination, amount, rng_.next_u64(), std::nullopt, std::nullopt, 0};
    tx.sig_u_signature = ledger_.sign(sig_u, tx);
    tx.sig_s_signature = ledger_.sign(sig_s, tx);
    auto tx_id = ledger_.spend(tx);
    close();
    rec.redeemed = true;
    record(user_label(name) + " spends " + format_dollars(amount) + " from ADD to " + destination + " on-chain");
    return tx_id;
  } catch (...) {
    close();
    throw;
  }
}

std::uint64_t Simulation::plain_redeem(const std::string& name, const std::string& destination, Cents amount) {
  require_mode(config_.mode == Mode::Baseline3, "plain MultiSig redemption");
  auto& u = user(name);
  const auto sq = square_held_by(name);
  auto& rec = mutable_square(sq);
  if (store_->ping(rec.owner_slot) == Presence::Absent) {
    throw Error(Errc::SlotEmpty, "[" + rec.owner_slot_label + "] is not in the self-destructive database");
  }
  if (amount <= 0) throw Error(Errc::NonPositiveAmount, std::to_string(amount));
  if (ledger_.balance(rec.address) < amount) throw Error(Errc::InsufficientFunds, rec.address);
  if (!u.memory().contains("Sig_U", sq)) throw Error(Errc::NotOwner, name + " holds no Sig_U");

  const auto sid = next_session_++;
  send(MessageType::SigRequest, sid, name, kServer, data_value("request Sig_S"));
  expect(kServer, MessageType::SigRequest, sid, Errc::Timeout);
  auto taken = store_->take(rec.owner_slot);
  send(MessageType::SigDelivery, sid, kServer, name, decode(taken.value), true);
  auto delivery = expect(name, MessageType::SigDelivery, sid, Errc::Timeout);
  u.memory().put("Sig_S", Role::SigningKey, delivery.payload, sq);
  record(user_label(name) + " requests Sig_S from " + kServerLabel + "; [Sig_S] is deleted");

  ChainTx tx{rec.address, destination, amount, rng_.next_u64(), std::nullopt, std::nullopt, 0};
  tx.sig_u_signature = ledger_.sign(u.memory().at("Sig_U", sq), tx);
  tx.sig_s_signature = ledger_.sign(u.memory().at("Sig_S", sq), tx);
  auto tx_id = ledger_.spend(tx);
  rec.redeemed = true;
  record(user_label(name) + " spends " + format_dollars(amount) + " from ADD to " + destination + " on-chain");
  return tx_id;
}

}  // namespace cryptocubic
