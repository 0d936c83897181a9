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

#include "cryptocubic/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>

#include "cryptocubic/adversary.hpp"

namespace cryptocubic {
namespace {

struct Word {
  std::string text;
  std::size_t column = 0;  // 1-based
};

std::vector<Word> split_words(std::string_view line) {
  std::vector<Word> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    auto start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    out.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

std::string_view trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

bool is_identifier(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

const std::map<std::string_view, std::pair<CommandKind, std::size_t>>& grammar() {
  static const std::map<std::string_view, std::pair<CommandKind, std::size_t>> g = {
      {"setup", {CommandKind::Setup, 1}},
      {"fund", {CommandKind::Fund, 2}},
      {"transfer", {CommandKind::Transfer, 2}},
      {"redeem", {CommandKind::Redeem, 3}},
      {"attack", {CommandKind::Attack, 1}},
      {"expect-holdings", {CommandKind::ExpectHoldings, 1}},
      {"expect-verdict", {CommandKind::ExpectVerdict, 2}},
  };
  return g;
}

std::uint64_t parse_u64(const Word& t, std::size_t line) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc{} || ptr != t.text.data() + t.text.size()) {
    throw ScenarioSyntaxError(line, t.column, "expected a non-negative integer, got '" + t.text + "'");
  }
  return v;
}

void check_identifier(const Word& t, std::size_t line) {
  if (!is_identifier(t.text)) throw ScenarioSyntaxError(line, t.column, "invalid name '" + t.text + "'");
}

void check_scenario_name(const Word& t, std::size_t line) {
  const auto& names = attack_scenarios();
  if (std::find(names.begin(), names.end(), t.text) == names.end()) {
    throw ScenarioSyntaxError(line, t.column, "unknown attack scenario '" + t.text + "'");
  }
}

Command parse_command(std::string_view raw, const std::vector<Word>& words, std::size_t line) {
  const auto& head = words.front();
  auto it = grammar().find(head.text);
  if (it == grammar().end()) throw ScenarioSyntaxError(line, head.column, "unknown command '" + head.text + "'");
  const auto [kind, arity] = it->second;
  Command cmd{kind, {}, line};

  if (kind == CommandKind::ExpectHoldings) {
    if (words.size() < 2) throw ScenarioSyntaxError(line, raw.size() + 1, "expect-holdings needs a party");
    check_identifier(words[1], line);
    cmd.args.push_back(words[1].text);
    auto rest_start = words[1].column - 1 + words[1].text.size();
    auto rest = trim(raw.substr(rest_start));
    if (rest.empty()) return cmd;
    const std::size_t col = static_cast<std::size_t>(rest.data() - raw.data()) + 1;
    std::size_t pos = 0;
    while (true) {
      auto comma = rest.find(',', pos);
      auto item = trim(rest.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
      if (item.empty()) throw ScenarioSyntaxError(line, col + pos, "empty variable name in list");
      cmd.args.emplace_back(item);
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    return cmd;
  }

  if (words.size() - 1 != arity) {
    auto col = words.size() - 1 > arity ? words[arity + 1].column : raw.size() + 1;
    throw ScenarioSyntaxError(line, col,
                              head.text + " takes " + std::to_string(arity) + " argument(s), got " +
                                  std::to_string(words.size() - 1));
  }
  for (std::size_t i = 1; i < words.size(); ++i) cmd.args.push_back(words[i].text);

  switch (kind) {
    case CommandKind::Setup:
      check_identifier(words[1], line);
      break;
    case CommandKind::Fund:
      check_identifier(words[1], line);
      parse_u64(words[2], line);
      break;
    case CommandKind::Transfer:
      check_identifier(words[1], line);
      check_identifier(words[2], line);
      break;
    case CommandKind::Redeem:
      check_identifier(words[1], line);
      check_identifier(words[2], line);
      parse_u64(words[3], line);
      break;
    case CommandKind::Attack:
      check_scenario_name(words[1], line);
      break;
    case CommandKind::ExpectVerdict:
      check_scenario_name(words[1], line);
      if (words[2].text != "true" && words[2].text != "false") {
        throw ScenarioSyntaxError(line, words[2].column, "expected true or false, got '" + words[2].text + "'");
      }
      break;
    case CommandKind::ExpectHoldings:
      break;
  }
  return cmd;
}

template <typename T>
void set_once(std::optional<T>& slot, T value, const Word& at, std::size_t line) {
  if (slot) throw ScenarioSyntaxError(line, at.column, "duplicate '" + at.text + "' directive");
  slot = value;
}

}  // namespace

std::string_view command_name(CommandKind k) noexcept {
  switch (k) {
    case CommandKind::Setup: return "setup";
    case CommandKind::Fund: return "fund";
    case CommandKind::Transfer: return "transfer";
    case CommandKind::Redeem: return "redeem";
    case CommandKind::Attack: return "attack";
    case CommandKind::ExpectHoldings: return "expect-holdings";
    case CommandKind::ExpectVerdict: return "expect-verdict";
  }
  return "unknown";
}

ScenarioScript parse_scenario(std::string_view text) {
  ScenarioScript script;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++line_no;
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);

    auto words = split_words(raw);
    if (words.empty()) continue;
    const auto& head = words.front();
    if (head.text == "mode" || head.text == "seed" || head.text == "backend") {
      if (words.size() != 2) {
        throw ScenarioSyntaxError(line_no, words.size() > 2 ? words[2].column : raw.size() + 1,
                                  head.text + " takes exactly one value");
      }
      try {
        if (head.text == "mode") set_once(script.mode, parse_mode(words[1].text), head, line_no);
        if (head.text == "backend") set_once(script.backend, parse_backend(words[1].text), head, line_no);
      } catch (const ScenarioSyntaxError&) {
        throw;
      } catch (const Error& e) {
        throw ScenarioSyntaxError(line_no, words[1].column, e.what());
      }
      if (head.text == "seed") set_once(script.seed, parse_u64(words[1], line_no), head, line_no);
      continue;
    }
    script.commands.push_back(parse_command(raw, words, line_no));
  }
  return script;
}

std::string print_scenario(const ScenarioScript& script) {
  std::string out;
  if (script.mode) out += "mode " + std::string(mode_name(*script.mode)) + "\n";
  if (script.seed) out += "seed " + std::to_string(*script.seed) + "\n";
  if (script.backend) out += "backend " + std::string(backend_name(*script.backend)) + "\n";
  for (const auto& c : script.commands) {
    out += command_name(c.kind);
    if (c.kind == CommandKind::ExpectHoldings) {
      out += " " + c.args.at(0);
      for (std::size_t i = 1; i < c.args.size(); ++i) out += (i == 1 ? " " : ",") + c.args[i];
    } else {
      for (const auto& a : c.args) out += " " + a;
    }
    out += "\n";
  }
  return out;
}

Config resolve_config(const ScenarioScript& script, const ConfigOverrides& overrides, Config base) {
  if (auto m = overrides.mode ? overrides.mode : script.mode) base.mode = *m;
  if (auto s = overrides.seed ? overrides.seed : script.seed) base.seed = *s;
  if (auto b = overrides.backend ? overrides.backend : script.backend) base.backend = *b;
  return base;
}

namespace {

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& i : items) out += (out.empty() ? "" : ",") + i;
  return out;
}

Cents to_cents(const std::string& s) { return static_cast<Cents>(std::stoull(s)); }

}  // namespace

RunResult run_scenario(const ScenarioScript& script, const Config& config) {
  RunResult result;
  Simulation sim(config);
  std::vector<AttackVerdict> verdicts;

  auto fail = [&](const Command& c, const std::string& why) {
    result.log += "FAIL line " + std::to_string(c.line) + ": " + why + "\n";
    result.exit_code = 1;
  };

  for (const auto& c : script.commands) {
    std::string line = std::string(command_name(c.kind));
    for (const auto& a : c.args) line += " " + a;
    try {
      switch (c.kind) {
        case CommandKind::Setup:
          sim.setup(c.args[0]);
          break;
        case CommandKind::Fund:
          sim.fund(c.args[0], to_cents(c.args[1]));
          break;
        case CommandKind::Transfer: {
          auto id = sim.transfer(c.args[0], c.args[1]);
          const auto& s = sim.session(id);
          if (s.phase == Phase::Aborted) {
            line += " (aborted: " + std::string(errc_name(*s.abort_reason)) + ")";
          }
          break;
        }
        case CommandKind::Redeem:
          sim.redeem(c.args[0], c.args[1], to_cents(c.args[2]));
          break;
        case CommandKind::Attack:
          verdicts.push_back(run_attack(c.args[0], config));
          line += " -> " + verdict_line(verdicts.back());
          break;
        case CommandKind::ExpectHoldings: {
          auto got = sim.holdings(c.args[0]);
          std::vector<std::string> want(c.args.begin() + 1, c.args.end());
          auto got_sorted = got;
          std::sort(got_sorted.begin(), got_sorted.end());
          std::sort(want.begin(), want.end());
          if (got_sorted != want) {
            result.log += line + "\n";
            fail(c, c.args[0] + " holds {" + join(got) + "}");
            break;
          }
          break;
        }
        case CommandKind::ExpectVerdict: {
          auto v = run_attack(c.args[0], config);
          verdicts.push_back(v);
          const bool want = c.args[1] == "true";
          if (!v.applicable) {
            result.log += line + "\n";
            fail(c, c.args[0] + " does not apply in mode " + std::string(mode_name(config.mode)));
          } else if (v.can_spend != want) {
            result.log += line + "\n";
            fail(c, c.args[0] + " gave can_spend=" + (v.can_spend ? "true" : "false"));
          }
          break;
        }
      }
    } catch (const Error& e) {
      result.log += line + "\n";
      fail(c, e.what());
    }
    if (result.exit_code != 0) break;
    result.log += line + "\n";
  }

  result.trace = sim.trace_text();
  if (!verdicts.empty()) result.report = verdict_report(verdicts);
  result.ledger = sim.ledger().dump();
  return result;
}

}  // namespace cryptocubic
