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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cryptocubic/backend.hpp"
#include "cryptocubic/ledger.hpp"
#include "cryptocubic/protocol.hpp"
#include "cryptocubic/trace.hpp"
#include "cryptocubic/value.hpp"

namespace cryptocubic {

enum class Rule {
  Given,        // observed in a snapshot or on the wire
  Taken,        // read out of a self-destructive slot
  AsymDecrypt,  // cypher + matching private key
  SymDecrypt,   // cypher + symmetric key
  OpenTuple,
};

std::string_view rule_name(Rule r) noexcept;

struct Derivation {
  Rule rule = Rule::Given;
  Value result;
  std::vector<Value> premises;
};

/// Attacker knowledge with the first derivation of every term.
class Knowledge {
 public:
  Knowledge() = default;

  /// Returns false when the term was already known.
  bool add(const Value& v, Rule rule = Rule::Given, std::vector<Value> premises = {});
  void add_snapshot(const PartySnapshot& snap);
  void add_taken(const Value& v) { add(v, Rule::Taken); }
  void merge(const Knowledge& other);

  bool contains(const Value& v) const { return terms_.contains(v); }
  const std::set<Value>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  const Derivation& provenance(const Value& v) const;
  /// Rule applications leading to goal, premises first. Empty if unknown.
  std::vector<Derivation> witness(const Value& goal) const;

  friend bool operator==(const Knowledge& a, const Knowledge& b) { return a.terms_ == b.terms_; }

 private:
  std::set<Value> terms_;
  std::map<Value, Derivation> provenance_;
};

/// Least fixed point under decryption with known keys and tuple opening.
/// Hashing and encryption are not enumerated; derivable() answers them.
Knowledge closure(const Backend& backend, const Knowledge& knowledge);

/// Whether goal is in the closure or can be built from it by tupling,
/// hashing or encrypting known values with known keys.
bool derivable(const Backend& backend, const Knowledge& closed, const Value& goal);

struct AttackVerdict {
  std::string scenario;
  Mode mode = Mode::CryptoCubic;
  bool applicable = true;
  bool can_spend = false;
  std::vector<Derivation> witness;
  /// Set when can_spend: the ledger accepted a spend signed with the
  /// derived keys.
  std::optional<ChainTx> replay;
  /// What the staged run observed, e.g. an abort reason.
  std::string outcome;
};

/// Closes the knowledge and looks for both signing legs of the account at
/// address. When found, the keys sign a transfer of the whole balance to
/// "attacker" on the given ledger (funding it with one cent first when
/// empty) and the accepted transaction is recorded in the verdict.
AttackVerdict can_spend(const Backend& backend, Ledger& ledger, const Knowledge& knowledge,
                        const std::string& address);

inline const std::vector<std::string>& attack_scenarios() {
  static const std::vector<std::string> names = {"post_transfer_grab", "counterfeit_es",  "token_replay",
                                                 "double_transfer",    "wiretap_passive", "store_raid"};
  return names;
}

/// Stages a fresh honest run under config and mounts the named attack.
AttackVerdict run_attack(std::string_view scenario, const Config& config);

/// Knowledge a passive wiretap gains from a transcript. Confidential
/// records are skipped unless include_confidential is set.
Knowledge wiretap_knowledge(const std::vector<WireRecord>& transcript, std::size_t upto,
                            bool include_confidential = false);

/// The modelling assumption the verdicts rest on.
std::string_view channel_assumption() noexcept;
/// "scenario mode verdict [witness-length]"; verdict is n/a when the
/// scenario does not apply to the mode.
std::string verdict_line(const AttackVerdict& v);
std::string verdict_report(const std::vector<AttackVerdict>& verdicts);

}  // namespace cryptocubic
