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

#include "cryptocubic/value.hpp"

#include "cryptocubic/error.hpp"

namespace cryptocubic {

std::string_view kind_name(Kind k) noexcept {
  switch (k) {
    case Kind::AsymPrivate: return "asym-private";
    case Kind::AsymPublic: return "asym-public";
    case Kind::SymKey: return "sym-key";
    case Kind::SigKey: return "sig-key";
    case Kind::VerifyKey: return "verify-key";
    case Kind::Address: return "address";
    case Kind::AsymCypher: return "asym-cypher";
    case Kind::SymCypher: return "sym-cypher";
    case Kind::Digest: return "digest";
    case Kind::Token: return "token";
    case Kind::Signature: return "signature";
    case Kind::Tuple: return "tuple";
    case Kind::Data: return "data";
  }
  return "unknown";
}

Value data_value(std::string_view text) { return Value{Kind::Data, to_bytes(text)}; }

void encode_into(Bytes& out, const Value& v) {
  put_u8(out, static_cast<std::uint8_t>(v.kind));
  put_u32(out, static_cast<std::uint32_t>(v.bytes.size()));
  put_bytes(out, v.bytes);
}

Bytes encode(const Value& v) {
  Bytes out;
  out.reserve(v.bytes.size() + 5);
  encode_into(out, v);
  return out;
}

Value decode_next(ByteReader& r) {
  auto tag = r.u8();
  if (tag < static_cast<std::uint8_t>(Kind::AsymPrivate) || tag > static_cast<std::uint8_t>(Kind::Data)) {
    throw Error(Errc::MalformedValue, "unknown kind tag " + std::to_string(tag));
  }
  auto len = r.u32();
  auto body = r.take(len);
  return Value{static_cast<Kind>(tag), Bytes(body.begin(), body.end())};
}

Value decode(ByteView b) {
  ByteReader r(b);
  auto v = decode_next(r);
  if (!r.done()) throw Error(Errc::MalformedValue, "trailing bytes after value");
  return v;
}

Value make_tuple(const std::vector<Value>& items) {
  Value t{Kind::Tuple, {}};
  for (const auto& item : items) encode_into(t.bytes, item);
  return t;
}

Value make_tuple(std::initializer_list<Value> items) { return make_tuple(std::vector<Value>(items)); }

std::vector<Value> open_tuple(const Value& tuple) {
  if (tuple.kind != Kind::Tuple) throw Error(Errc::MalformedValue, "not a tuple");
  std::vector<Value> items;
  ByteReader r(tuple.bytes);
  while (!r.done()) items.push_back(decode_next(r));
  return items;
}

std::string describe(const Value& v) {
  std::string body;
  bool printable = !v.bytes.empty();
  for (auto c : v.bytes) {
    if (c < 0x20 || c > 0x7e) {
      printable = false;
      break;
    }
  }
  if (printable && v.bytes.size() <= 48) {
    body = to_string(v.bytes);
  } else {
    auto head = ByteView(v.bytes).first(std::min<std::size_t>(v.bytes.size(), 8));
    body = to_hex(head) + (v.bytes.size() > 8 ? "..." : "");
  }
  return std::string(kind_name(v.kind)) + "(" + body + ")";
}

}  // namespace cryptocubic
