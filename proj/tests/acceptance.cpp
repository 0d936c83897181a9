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

// Prints one PASS/FAIL line per acceptance criterion and exits non-zero if
// any criterion fails.

#include <algorithm>
#include <atomic>
#include <functional>
#include <iostream>
#include <latch>
#include <mutex>
#include <thread>

#include "cryptocubic/adversary.hpp"
#include "cryptocubic/destructive_store.hpp"
#include "cryptocubic/protocol.hpp"
#include "cryptocubic/scenario.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

namespace {

using namespace cryptocubic;
using cryptocubic::testing::all_modes;
using cryptocubic::testing::read_file;
using cryptocubic::testing::run_canonical;
using cryptocubic::testing::source_path;

// Empty on success, otherwise the first problem found.
using Check = std::function<std::string()>;

std::string mode_path(Mode mode, const std::string& ext) {
  return source_path("scenarios/" + std::string(mode_name(mode)) + ext);
}

std::optional<Errc> error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

std::string trace_fidelity() {
  for (auto mode : all_modes()) {
    auto run = run_canonical(mode, BackendKind::Symbolic);
    if (run.exit_code != 0) return std::string(mode_name(mode)) + " run failed: " + run.log;
    if (run.trace != read_file(mode_path(mode, ".trace"))) return std::string(mode_name(mode)) + " trace differs from golden";
    auto reference = parse_tables(
        read_file(source_path("tests/fixtures/reference_tables/" + std::string(mode_name(mode)) + ".tables")));
    if (auto miss = testing::first_unmatched_table(reference, parse_tables(run.trace))) {
      return std::string(mode_name(mode)) + " reference " + reference[*miss].label + " not reproduced";
    }
  }
  return {};
}

std::string security_oracle() {
  Config c;
  Simulation sim(c);
  sim.setup("A");
  sim.fund("A", 1000);
  sim.transfer("A", "B");
  const auto address = sim.square(1).address;
  const auto& transcript = sim.transport().transcript();
  for (const auto& e : sim.trace()) {
    Knowledge server, server_and_users, tap, raid;
    for (const auto& snap : e.snapshots) {
      if (snap.party == "SERVER_S") {
        server.add_snapshot(snap);
        raid.add_snapshot(snap);
      }
      server_and_users.add_snapshot(snap);
    }
    for (const auto& v : e.slot_contents) raid.add_taken(v);
    tap = wiretap_knowledge(transcript, e.wire_records);
    for (const auto* k : {&server, &server_and_users, &tap, &raid}) {
      if (can_spend(sim.backend(), sim.ledger(), *k, address).can_spend) {
        return "step " + std::to_string(e.step) + " leaks both signing keys";
      }
    }
  }
  for (const auto& name : attack_scenarios()) {
    auto v = run_attack(name, c);
    if (!v.applicable || v.can_spend) return verdict_line(v);
  }
  return {};
}

std::string baseline_contrast() {
  Config c;
  c.mode = Mode::Baseline3;
  auto v = run_attack("post_transfer_grab", c);
  if (!v.can_spend) return "post_transfer_grab did not find both keys";
  if (!v.replay || !v.replay->tx_id || v.replay->amount != 1000) return "witness did not replay as a $10 spend";
  return {};
}

std::string liveness() {
  Config c;
  Simulation sim(c);
  sim.setup("A");
  sim.fund("A", 1000);
  sim.transfer("A", "B");
  const auto& rec = sim.square(1);
  if (error_of([&] { sim.redeem("A", "attacker", 1000); }) != Errc::AuthFailure) return "A's redeem was not refused";
  const auto before = sim.ledger().balance(rec.address);
  sim.redeem("B", "X", 1000);
  if (before - sim.ledger().balance(rec.address) != 1000 || sim.ledger().balance("X") != 1000) {
    return "redeem did not move exactly 1000 cents";
  }
  if (sim.store().ping(rec.owner_slot) != Presence::Absent) return "[Eb] still present";
  if (error_of([&] { sim.redeem("B", "X", 1000); }) != Errc::SlotEmpty) return "second redeem not SlotEmpty";
  return {};
}

std::string store_properties() {
  Rng rng(2024);
  for (int trial = 0; trial < 10000; ++trial) {
    const int takers = 2 + static_cast<int>(rng.next_u64() % 3);
    const int fills = 1 + static_cast<int>(rng.next_u64() % 3);
    DestructiveStore store;
    auto cap = store.grant_source({1});
    std::atomic<int> remaining{fills};
    std::atomic<int> taken{0};
    std::latch start(takers + 1);
    std::vector<std::thread> threads;
    for (int t = 0; t < takers; ++t) {
      threads.emplace_back([&] {
        start.arrive_and_wait();
        while (remaining.load() > 0) {
          try {
            store.take(1);
            taken.fetch_add(1);
            remaining.fetch_sub(1);
          } catch (const Error&) {
            std::this_thread::yield();
          }
        }
      });
    }
    start.arrive_and_wait();
    for (int f = 0; f < fills; ++f) {
      while (store.ping(1) == Presence::Present) std::this_thread::yield();
      store.insert(cap, 1, Bytes{static_cast<std::uint8_t>(f)});
    }
    for (auto& th : threads) th.join();
    if (taken.load() != fills || store.history(1).takes != static_cast<std::uint64_t>(fills)) {
      return "trial " + std::to_string(trial) + " took " + std::to_string(taken.load()) + " of " + std::to_string(fills);
    }
  }

  DestructiveStore store;
  auto cap = store.grant_source({1, 2});
  store.insert(cap, 1, rng.bytes(64));
  for (int i = 0; i < 1000; ++i) {
    auto t = store.take(1);
    auto mutated = t.value;
    mutated[rng.next_u64() % mutated.size()] ^= 0x5a;
    if (error_of([&] { store.reinsert(t.permit, mutated); }) != Errc::ValueMismatch) return "mutated reinsert accepted";
    store.reinsert(t.permit, t.value);
  }
  const auto digest = store.state_digest();
  for (int i = 0; i < 100; ++i) {
    store.ping(1);
    store.ping(2);
  }
  if (store.state_digest() != digest) return "ping changed the state digest";
  return {};
}

using FaultFactory = std::function<Transport::Interposer(Simulation&)>;

std::string abort_case(const FaultFactory& fault, Errc expected) {
  Config c;
  Simulation sim(c);
  sim.setup("A");
  sim.fund("A", 1000);
  sim.transport().set_interposer(fault(sim));
  auto sid = sim.transfer("A", "B");
  const auto& s = sim.session(sid);
  if (s.phase != Phase::Aborted || s.abort_reason != expected) return "session was not aborted as expected";
  if (sim.store().ping(sim.square(1).owner_slot) != Presence::Present) return "[Ea] not restored";
  if (sim.square(1).owner != "A") return "owner changed";
  sim.transport().clear_interposer();
  if (sim.session(sim.transfer("A", "B")).phase != Phase::Completed) return "honest retry failed";
  return {};
}

std::string abort_correctness() {
  auto mismatch = abort_case(
      [](Simulation& sim) -> Transport::Interposer {
        auto wrong = sim.backend().gen_asym_pair(sim.rng()).private_key;
        return [wrong](const Message& m) -> std::optional<Message> {
          if (m.type != MessageType::KeyDelivery) return m;
          Message out = m;
          out.payload = wrong;
          return out;
        };
      },
      Errc::KaMismatch);
  if (!mismatch.empty()) return "Ka mismatch: " + mismatch;
  auto timeout = abort_case(
      [](Simulation&) -> Transport::Interposer {
        return [](const Message& m) -> std::optional<Message> {
          if (m.type == MessageType::KeyDelivery) return std::nullopt;
          return m;
        };
      },
      Errc::Timeout);
  if (!timeout.empty()) return "timeout: " + timeout;
  return {};
}

std::string crypto_properties() {
  for (auto kind : {BackendKind::Symbolic, BackendKind::Concrete}) {
    auto b = make_backend(kind);
    const std::string name(backend_name(kind));
    Rng rng(42);
    auto pair = b->gen_asym_pair(rng);
    auto key = b->gen_sym_key(rng);
    for (int i = 0; i < 100; ++i) {
      auto m = testing::random_plaintext(rng);
      if (b->asym_decrypt(pair.private_key, b->asym_encrypt(rng, pair.public_key, m)) != m) return name + " asym round trip";
      if (b->sym_decrypt(key.key, b->sym_encrypt(rng, key.key, m)) != m) return name + " sym round trip";
    }
    std::vector<AsymKeyPair> pairs;
    for (int i = 0; i < 5; ++i) pairs.push_back(b->gen_asym_pair(rng));
    for (const auto& p : pairs) {
      for (const auto& q : pairs) {
        auto c = b->asym_encrypt(rng, q.public_key, data_value("probe"));
        const bool opens = b->try_asym_decrypt(p.private_key, c) == data_value("probe");
        if (opens != b->matches(p.private_key, q.public_key)) return name + " matches disagrees with decrypt";
      }
    }
    std::set<Value> inputs, digests;
    for (int i = 0; i < 1000; ++i) {
      auto m = testing::random_plaintext(rng, 48);
      if (!inputs.insert(m).second) continue;
      auto d = b->hash(m);
      if (d != b->hash(m)) return name + " hash not deterministic";
      digests.insert(d);
    }
    if (digests.size() != inputs.size()) return name + " hash collision";
    for (int i = 0; i < 500; ++i) {
      auto pool = testing::random_key_pool(*b, rng);
      Knowledge k;
      for (const auto& t : testing::random_knowledge_set(*b, rng, pool)) k.add(t);
      auto once = closure(*b, k);
      if (!(closure(*b, once) == once)) return name + " closure not idempotent";
    }
  }
  return {};
}

std::string backend_equivalence() {
  for (auto mode : all_modes()) {
    auto sym = run_canonical(mode, BackendKind::Symbolic);
    auto con = run_canonical(mode, BackendKind::Concrete);
    if (sym.trace != con.trace) return std::string(mode_name(mode)) + " traces differ";
    if (sym.report != con.report) return std::string(mode_name(mode)) + " verdicts differ";
    if (sym.exit_code != con.exit_code) return std::string(mode_name(mode)) + " exit codes differ";
  }
  return {};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Check>> criteria = {
      {"trace fidelity", trace_fidelity},
      {"security oracle (cryptocubic)", security_oracle},
      {"security contrast (baseline3)", baseline_contrast},
      {"legitimate-path liveness", liveness},
      {"destructive-store properties", store_properties},
      {"abort correctness", abort_correctness},
      {"crypto properties", crypto_properties},
      {"backend equivalence", backend_equivalence},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    std::string problem;
    try {
      problem = check();
    } catch (const std::exception& e) {
      problem = std::string("threw: ") + e.what();
    }
    if (problem.empty()) {
      std::cout << "PASS " << name << "\n";
    } else {
      std::cout << "FAIL " << name << ": " << problem << "\n";
      ++failed;
    }
  }
  return failed == 0 ? 0 : 1;
}
