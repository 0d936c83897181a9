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

#include "cryptocubic/trace.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace cryptocubic {
namespace {

std::string rtrim(std::string s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.pop_back();
  return s;
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_cells(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    auto bar = line.find('|', start);
    cells.push_back(trim(line.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start)));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return cells;
}

}  // namespace

std::string render_event(const TraceEvent& e) {
  std::ostringstream out;
  out << "== step " << e.step << ": " << e.label << " ==\n";
  if (e.columns.empty()) return out.str();

  std::vector<std::size_t> width;
  std::size_t rows = 0;
  for (const auto& c : e.columns) {
    std::size_t w = c.header.size();
    for (const auto& l : c.lines) w = std::max(w, l.size());
    width.push_back(w);
    rows = std::max(rows, c.lines.size());
  }
  auto row = [&](auto cell_of) {
    std::string line;
    for (std::size_t i = 0; i < e.columns.size(); ++i) {
      if (i > 0) line += " | ";
      std::string cell = cell_of(i);
      cell.resize(width[i], ' ');
      line += cell;
    }
    out << rtrim(line) << '\n';
  };
  row([&](std::size_t i) { return e.columns[i].header; });
  for (std::size_t r = 0; r < rows; ++r) {
    row([&](std::size_t i) { return r < e.columns[i].lines.size() ? e.columns[i].lines[r] : std::string(); });
  }
  return out.str();
}

std::string render_trace(const std::vector<TraceEvent>& events) {
  std::string out;
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (i > 0) out += '\n';
    out += render_event(events[i]);
  }
  return out;
}

std::vector<HoldingsTable> parse_tables(std::string_view text) {
  std::vector<HoldingsTable> tables;
  std::optional<HoldingsTable> current;
  auto flush = [&] {
    if (current && !current->headers.empty()) tables.push_back(std::move(*current));
    current.reset();
  };
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    auto t = trim(line);
    if (t.empty()) {
      flush();
      continue;
    }
    if (!current) current.emplace();
    if (t.starts_with("==") && current->headers.empty()) {
      auto body = trim(std::string_view(t).substr(2));
      if (body.ends_with("==")) body = trim(std::string_view(body).substr(0, body.size() - 2));
      current->label = body;
      continue;
    }
    auto cells = split_cells(line);
    if (current->headers.empty()) {
      current->headers = cells;
      current->cells.resize(cells.size());
      continue;
    }
    for (std::size_t i = 0; i < cells.size() && i < current->cells.size(); ++i) {
      if (!cells[i].empty()) current->cells[i].insert(cells[i]);
    }
  }
  flush();
  return tables;
}

}  // namespace cryptocubic
