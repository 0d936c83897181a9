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

#include "cryptocubic/adversary.hpp"

#include <deque>
#include <memory>

namespace cryptocubic {

std::string_view rule_name(Rule r) noexcept {
  switch (r) {
    case Rule::Given: return "given";
    case Rule::Taken: return "taken";
    case Rule::AsymDecrypt: return "asym-decrypt";
    case Rule::SymDecrypt: return "sym-decrypt";
    case Rule::OpenTuple: return "open-tuple";
  }
  return "unknown";
}

bool Knowledge::add(const Value& v, Rule rule, std::vector<Value> premises) {
  if (!terms_.insert(v).second) return false;
  provenance_.emplace(v, Derivation{rule, v, std::move(premises)});
  return true;
}

void Knowledge::add_snapshot(const PartySnapshot& snap) {
  for (const auto& t : snap.terms) add(t);
}

void Knowledge::merge(const Knowledge& other) {
  for (const auto& [v, d] : other.provenance_) add(v, d.rule, d.premises);
}

const Derivation& Knowledge::provenance(const Value& v) const {
  auto it = provenance_.find(v);
  if (it == provenance_.end()) throw Error(Errc::MissingVariable, "term not known: " + describe(v));
  return it->second;
}

std::vector<Derivation> Knowledge::witness(const Value& goal) const {
  std::vector<Derivation> out;
  if (!contains(goal)) return out;
  std::set<Value> done;
  // Iterative post-order walk over premises.
  std::vector<std::pair<Value, bool>> stack{{goal, false}};
  while (!stack.empty()) {
    auto [v, expanded] = stack.back();
    stack.pop_back();
    if (done.contains(v)) continue;
    const auto& d = provenance(v);
    if (expanded) {
      done.insert(v);
      out.push_back(d);
      continue;
    }
    stack.emplace_back(v, true);
    for (const auto& p : d.premises) {
      if (!done.contains(p)) stack.emplace_back(p, false);
    }
  }
  return out;
}

Knowledge closure(const Backend& backend, const Knowledge& knowledge) {
  Knowledge k = knowledge;
  std::deque<Value> work(k.terms().begin(), k.terms().end());
  std::vector<Value> privs, syms, asym_cyphers, sym_cyphers;

  auto learn = [&](const Value& v, Rule rule, std::vector<Value> premises) {
    if (k.add(v, rule, std::move(premises))) work.push_back(v);
  };

  while (!work.empty()) {
    Value t = std::move(work.front());
    work.pop_front();
    switch (t.kind) {
      case Kind::Tuple:
        for (auto& item : open_tuple(t)) learn(item, Rule::OpenTuple, {t});
        break;
      case Kind::AsymCypher:
        for (const auto& p : privs) {
          if (auto m = backend.try_asym_decrypt(p, t)) learn(*m, Rule::AsymDecrypt, {t, p});
        }
        asym_cyphers.push_back(t);
        break;
      case Kind::SymCypher:
        for (const auto& s : syms) {
          if (auto m = backend.try_sym_decrypt(s, t)) learn(*m, Rule::SymDecrypt, {t, s});
        }
        sym_cyphers.push_back(t);
        break;
      case Kind::AsymPrivate:
        for (const auto& c : asym_cyphers) {
          if (auto m = backend.try_asym_decrypt(t, c)) learn(*m, Rule::AsymDecrypt, {c, t});
        }
        privs.push_back(t);
        break;
      case Kind::SymKey:
        for (const auto& c : sym_cyphers) {
          if (auto m = backend.try_sym_decrypt(t, c)) learn(*m, Rule::SymDecrypt, {c, t});
        }
        syms.push_back(t);
        break;
      default:
        break;
    }
  }
  return k;
}

bool derivable(const Backend& backend, const Knowledge& closed, const Value& goal) {
  if (closed.contains(goal)) return true;
  switch (goal.kind) {
    case Kind::Tuple: {
      for (const auto& item : open_tuple(goal)) {
        if (!derivable(backend, closed, item)) return false;
      }
      return true;
    }
    case Kind::Digest:
      for (const auto& t : closed.terms()) {
        if (backend.hash(t) == goal) return true;
      }
      return false;
    case Kind::AsymCypher:
    case Kind::SymCypher: {
      // Concrete encryption is randomized, so only a symbolic cypher can be
      // rebuilt bit for bit.
      if (backend.kind() != BackendKind::Symbolic) return false;
      const auto key_kind = goal.kind == Kind::AsymCypher ? Kind::AsymPublic : Kind::SymKey;
      Rng unused(0);
      for (const auto& key : closed.terms()) {
        if (key.kind != key_kind) continue;
        for (const auto& plain : closed.terms()) {
          if (plain.bytes.empty()) continue;
          auto c = goal.kind == Kind::AsymCypher ? backend.asym_encrypt(unused, key, plain)
                                                 : backend.sym_encrypt(unused, key, plain);
          if (c == goal) return true;
        }
      }
      return false;
    }
    default:
      return false;
  }
}

AttackVerdict can_spend(const Backend& backend, Ledger& ledger, const Knowledge& knowledge,
                        const std::string& address) {
  AttackVerdict verdict;
  const auto& account = ledger.account(address);
  if (!account.vk_u || !account.vk_s) return verdict;

  auto closed = closure(backend, knowledge);
  std::optional<Value> sig_u, sig_s;
  for (const auto& t : closed.terms()) {
    if (t.kind != Kind::SigKey) continue;
    auto vk = backend.verify_key(t);
    if (vk == *account.vk_u) sig_u = t;
    if (vk == *account.vk_s) sig_s = t;
  }
  if (!sig_u || !sig_s) return verdict;

  verdict.can_spend = true;
  std::set<Value> seen;
  for (const auto& goal : {*sig_u, *sig_s}) {
    for (auto& d : closed.witness(goal)) {
      if (seen.insert(d.result).second) verdict.witness.push_back(std::move(d));
    }
  }

  if (ledger.balance(address) == 0) ledger.fund(address, 1);
  std::uint64_t nonce = 1;
  while (account.used_nonces.contains(nonce)) ++nonce;
  ChainTx tx{address, "attacker", ledger.balance(address), nonce, std::nullopt, std::nullopt, 0};
  tx.sig_u_signature = ledger.sign(*sig_u, tx);
  tx.sig_s_signature = ledger.sign(*sig_s, tx);
  tx.tx_id = ledger.spend(tx);
  verdict.replay = tx;
  return verdict;
}

Knowledge wiretap_knowledge(const std::vector<WireRecord>& transcript, std::size_t upto, bool include_confidential) {
  Knowledge k;
  for (std::size_t i = 0; i < upto && i < transcript.size(); ++i) {
    if (transcript[i].confidential && !include_confidential) continue;
    k.add(decode_message(transcript[i].wire).payload);
  }
  return k;
}

namespace {

constexpr Cents kStake = 1000;

std::unique_ptr<Simulation> stage(const Config& config) {
  auto sim = std::make_unique<Simulation>(config);
  sim->setup("A");
  sim->fund("A", kStake);
  return sim;
}

Knowledge snapshots(const Simulation& sim, std::initializer_list<const char*> parties) {
  Knowledge k;
  for (const auto* p : parties) k.add_snapshot(sim.snapshot(p));
  return k;
}

Knowledge full_wiretap(const Simulation& sim) {
  const auto& t = sim.transport().transcript();
  return wiretap_knowledge(t, t.size());
}

void take_owner_slot(Simulation& sim, SquareId sq, Knowledge& k) {
  const auto slot = sim.square(sq).owner_slot;
  if (sim.store().ping(slot) == Presence::Present) k.add_taken(decode(sim.store().take(slot).value));
}

std::string session_outcome(const TransferSession& s) {
  if (s.phase == Phase::Aborted && s.abort_reason) return "aborted: " + std::string(errc_name(*s.abort_reason));
  return std::string(phase_name(s.phase));
}

// Transfers A -> `to` step by step so a second session can interleave.
void finish_transfer(Simulation& sim, SessionId id) {
  if (sim.session(id).phase != Phase::EaWithdrawn) return;
  const auto& s = sim.session(id);
  if (sim.config().mode == Mode::CryptoCubic) {
    if (!sim.authenticate(id, s.sender) || !sim.authenticate(id, s.receiver) || !sim.verify_es(id)) return;
  }
  sim.complete_transfer(id);
}

AttackVerdict post_transfer_grab(const Config& config) {
  auto sim = stage(config);
  sim->transfer("A", "B");
  const auto sq = sim->square_held_by("B");
  auto k = snapshots(*sim, {"A", "S"});
  take_owner_slot(*sim, sq, k);
  auto v = can_spend(sim->backend(), sim->ledger(), k, sim->square(sq).address);
  v.outcome = "A and S snapshots plus a take of [" + sim->square(sq).owner_slot_label + "]";
  return v;
}

AttackVerdict counterfeit_es(const Config& config) {
  auto sim = stage(config);
  const auto sq = sim->square_held_by("A");
  const auto& backend = sim->backend();
  Rng forge(config.seed ^ 0x5eedf00dULL);
  auto fake = backend.sym_encrypt(forge, backend.gen_sym_key(forge).key, backend.gen_sig_key(forge));
  sim->transport().set_interposer([&](const Message& m) -> std::optional<Message> {
    if (m.type != MessageType::SquareHandoff) return m;
    auto parts = open_tuple(m.payload);
    Message out = m;
    out.payload = make_tuple({fake, parts.at(1)});
    return out;
  });
  auto id = sim->transfer("A", "B");
  sim->transport().clear_interposer();

  auto k = snapshots(*sim, {"A", "B"});
  k.merge(full_wiretap(*sim));
  auto v = can_spend(sim->backend(), sim->ledger(), k, sim->square(sq).address);
  const bool slot_back = sim->store().ping(sim->square(sq).owner_slot) == Presence::Present;
  v.outcome = session_outcome(sim->session(id)) + (slot_back ? "; owner slot present" : "; owner slot empty") +
              "; owner " + sim->square(sq).owner;
  return v;
}

AttackVerdict token_replay(const Config& config) {
  auto sim = stage(config);
  sim->transfer("A", "B");
  std::optional<Value> recorded;
  for (const auto& rec : sim->transport().transcript()) {
    auto m = decode_message(rec.wire);
    if (m.type == MessageType::ChallengeResponse && m.from == "B") recorded = m.payload;
  }
  if (!recorded) throw Error(Errc::MissingVariable, "no challenge response from B was observed");

  sim->transport().set_interposer([&](const Message& m) -> std::optional<Message> {
    if (m.type != MessageType::ChallengeResponse || m.from != "A") return m;
    Message out = m;
    out.payload = *recorded;
    return out;
  });
  std::string outcome = "redeem by A accepted";
  try {
    sim->redeem("A", "attacker", kStake);
  } catch (const Error& e) {
    outcome = "redeem by A rejected: " + std::string(errc_name(e.code()));
  }
  sim->transport().clear_interposer();

  const auto sq = sim->square_held_by("A");
  auto k = snapshots(*sim, {"A"});
  k.merge(full_wiretap(*sim));
  auto v = can_spend(sim->backend(), sim->ledger(), k, sim->square(sq).address);
  v.outcome = outcome;
  return v;
}

AttackVerdict double_transfer(const Config& config) {
  auto sim = stage(config);
  const auto sq = sim->square_held_by("A");
  std::string outcome;
  if (config.mode == Mode::Baseline3) {
    sim->plain_transfer("A", "B");
    sim->plain_transfer("A", "C");
    outcome = "both hand-overs accepted";
  } else {
    auto s1 = sim->begin_transfer("A", "B");
    auto s2 = sim->begin_transfer("A", "C");
    sim->withdraw_owner_cypher(s1);
    sim->withdraw_owner_cypher(s2);
    finish_transfer(*sim, s1);
    finish_transfer(*sim, s2);
    outcome = "first " + session_outcome(sim->session(s1)) + "; second " + session_outcome(sim->session(s2));
  }
  auto k = snapshots(*sim, {"A", "C", "S"});
  take_owner_slot(*sim, sq, k);
  auto v = can_spend(sim->backend(), sim->ledger(), k, sim->square(sq).address);
  v.outcome = outcome;
  return v;
}

AttackVerdict wiretap_passive(const Config& config) {
  auto sim = stage(config);
  sim->transfer("A", "B");
  const auto sq = sim->square_held_by("B");
  auto k = full_wiretap(*sim);
  auto v = can_spend(sim->backend(), sim->ledger(), k, sim->square(sq).address);
  v.outcome = std::to_string(k.size()) + " terms observed";
  return v;
}

AttackVerdict store_raid(const Config& config) {
  auto sim = stage(config);
  sim->transfer("A", "B");
  const auto sq = sim->square_held_by("B");
  auto k = snapshots(*sim, {"S"});
  std::size_t taken = 0;
  for (const auto& [slot, presence] : sim->store().presence()) {
    if (presence != Presence::Present) continue;
    k.add_taken(decode(sim->store().take(slot).value));
    ++taken;
  }
  auto v = can_spend(sim->backend(), sim->ledger(), k, sim->square(sq).address);
  v.outcome = std::to_string(taken) + " slot(s) taken";
  return v;
}

}  // namespace

AttackVerdict run_attack(std::string_view scenario, const Config& config) {
  AttackVerdict v;
  const bool authenticated = config.mode == Mode::CryptoCubic;
  if (scenario == "post_transfer_grab") {
    v = post_transfer_grab(config);
  } else if (scenario == "counterfeit_es") {
    if (authenticated) v = counterfeit_es(config);
    else v.applicable = false;
  } else if (scenario == "token_replay") {
    if (authenticated) v = token_replay(config);
    else v.applicable = false;
  } else if (scenario == "double_transfer") {
    v = double_transfer(config);
  } else if (scenario == "wiretap_passive") {
    v = wiretap_passive(config);
  } else if (scenario == "store_raid") {
    v = store_raid(config);
  } else {
    throw Error(Errc::SyntaxError, "unknown attack scenario '" + std::string(scenario) + "'");
  }
  v.scenario = std::string(scenario);
  v.mode = config.mode;
  return v;
}

std::string_view channel_assumption() noexcept {
  return "key-bearing user<->server messages travel on a confidential channel";
}

std::string verdict_line(const AttackVerdict& v) {
  std::string line = v.scenario + " " + std::string(mode_name(v.mode)) + " ";
  if (!v.applicable) return line + "n/a";
  line += v.can_spend ? "true" : "false";
  if (v.can_spend) line += " " + std::to_string(v.witness.size());
  return line;
}

std::string verdict_report(const std::vector<AttackVerdict>& verdicts) {
  std::string out = "# assumption: " + std::string(channel_assumption()) + "\n";
  for (const auto& v : verdicts) out += verdict_line(v) + "\n";
  return out;
}

}  // namespace cryptocubic
