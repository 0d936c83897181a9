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

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "cryptocubic/bytes.hpp"

namespace cryptocubic {

/// What a value is, independent of how a backend represents it.
enum class Kind : std::uint8_t {
  AsymPrivate = 1,
  AsymPublic = 2,
  SymKey = 3,
  SigKey = 4,
  VerifyKey = 5,
  Address = 6,
  AsymCypher = 7,
  SymCypher = 8,
  Digest = 9,
  Token = 10,
  Signature = 11,
  Tuple = 12,
  Data = 13,
};

std::string_view kind_name(Kind k) noexcept;

/// A protocol value: a kind tag plus backend-specific bytes. The symbolic
/// backend stores structured terms in `bytes`; the concrete backend stores
/// real key material and ciphertexts. Values are ordered so they can live in
/// knowledge sets.
struct Value {
  Kind kind = Kind::Data;
  Bytes bytes;

  friend bool operator==(const Value&, const Value&) = default;
  friend std::strong_ordering operator<=>(const Value& a, const Value& b) {
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    return a.bytes <=> b.bytes;
  }
};

Value data_value(std::string_view text);

/// Self-delimiting encoding: kind byte, u32 length, payload.
Bytes encode(const Value& v);
void encode_into(Bytes& out, const Value& v);
/// Decodes exactly one value spanning the whole buffer.
Value decode(ByteView b);
Value decode_next(ByteReader& r);

Value make_tuple(std::initializer_list<Value> items);
Value make_tuple(const std::vector<Value>& items);
std::vector<Value> open_tuple(const Value& tuple);

/// Short printable form used in logs and witness listings.
std::string describe(const Value& v);

}  // namespace cryptocubic
