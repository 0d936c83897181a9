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

// Symbolic backend: every value is a printable structured term, e.g.
//   apub:7                    public half of asymmetric pair 7
//   aenc:7:<encoded value>    plaintext encrypted under apub:7
//   senc:3:<encoded value>    plaintext encrypted under sym:3
//   h:<encoded value>         digest of a value
//   sgn:5:<message>           signature by sig:5
// Decryption is pattern matching on the key id, which makes the attacker
// closure exact.

#include <charconv>
#include <string>

#include "backends.hpp"
#include "cryptocubic/error.hpp"

namespace cryptocubic::detail {
namespace {

Value atom(Kind kind, std::string_view prefix, std::uint64_t id) {
  return Value{kind, to_bytes(std::string(prefix) + ":" + std::to_string(id))};
}

struct Parsed {
  std::string_view prefix;
  std::uint64_t id = 0;
  ByteView rest;
};

// Splits "prefix:id[:rest]".
std::optional<Parsed> parse(const Value& v) {
  std::string_view s(reinterpret_cast<const char*>(v.bytes.data()), v.bytes.size());
  auto c1 = s.find(':');
  if (c1 == std::string_view::npos) return std::nullopt;
  Parsed p;
  p.prefix = s.substr(0, c1);
  auto c2 = s.find(':', c1 + 1);
  auto id_text = s.substr(c1 + 1, c2 == std::string_view::npos ? std::string_view::npos : c2 - c1 - 1);
  auto [ptr, ec] = std::from_chars(id_text.data(), id_text.data() + id_text.size(), p.id);
  if (ec != std::errc{} || ptr != id_text.data() + id_text.size()) return std::nullopt;
  if (c2 != std::string_view::npos) p.rest = ByteView(v.bytes).subspan(c2 + 1);
  return p;
}

std::uint64_t key_id(const Value& v, Kind kind, std::string_view prefix, Errc on_error) {
  auto p = v.kind == kind ? parse(v) : std::nullopt;
  if (!p || p->prefix != prefix) throw Error(on_error, "expected " + std::string(kind_name(kind)));
  return p->id;
}

Value seal(std::string_view prefix, std::uint64_t id, const Value& plain, Kind kind) {
  Value out{kind, to_bytes(std::string(prefix) + ":" + std::to_string(id) + ":")};
  encode_into(out.bytes, plain);
  return out;
}

Value open(const Value& cypher, Kind kind, std::string_view prefix, std::uint64_t expected_id) {
  if (cypher.kind != kind) throw Error(Errc::SchemeMismatch, "cypher scheme does not match key");
  auto p = parse(cypher);
  if (!p || p->prefix != prefix) throw Error(Errc::MalformedValue, "malformed symbolic cypher");
  if (p->id != expected_id) throw Error(Errc::KeyMismatch, "cypher was sealed under another key");
  return decode(p->rest);
}

class SymbolicBackend final : public Backend {
 public:
  BackendKind kind() const noexcept override { return BackendKind::Symbolic; }

  AsymKeyPair gen_asym_pair(Rng& rng) const override {
    auto id = rng.next_id();
    return {atom(Kind::AsymPrivate, "apriv", id), atom(Kind::AsymPublic, "apub", id), id};
  }

  SymKey gen_sym_key(Rng& rng) const override {
    auto id = rng.next_id();
    return {atom(Kind::SymKey, "sym", id), id};
  }

  Value gen_sig_key(Rng& rng) const override { return atom(Kind::SigKey, "sig", rng.next_id()); }

  Value asym_encrypt(Rng&, const Value& pub, const Value& plain) const override {
    if (plain.bytes.empty()) throw Error(Errc::EmptyPlaintext);
    return seal("aenc", key_id(pub, Kind::AsymPublic, "apub", Errc::SchemeMismatch), plain, Kind::AsymCypher);
  }

  Value asym_decrypt(const Value& priv, const Value& cypher) const override {
    if (cypher.kind != Kind::AsymCypher) throw Error(Errc::SchemeMismatch, "not an asymmetric cypher");
    return open(cypher, Kind::AsymCypher, "aenc", key_id(priv, Kind::AsymPrivate, "apriv", Errc::KeyMismatch));
  }

  Value sym_encrypt(Rng&, const Value& key, const Value& plain) const override {
    if (plain.bytes.empty()) throw Error(Errc::EmptyPlaintext);
    return seal("senc", key_id(key, Kind::SymKey, "sym", Errc::SchemeMismatch), plain, Kind::SymCypher);
  }

  Value sym_decrypt(const Value& key, const Value& cypher) const override {
    if (cypher.kind != Kind::SymCypher) throw Error(Errc::SchemeMismatch, "not a symmetric cypher");
    return open(cypher, Kind::SymCypher, "senc", key_id(key, Kind::SymKey, "sym", Errc::KeyMismatch));
  }

  Value hash(const Value& m) const override {
    if (m.bytes.empty()) throw Error(Errc::EmptyInput);
    Value out{Kind::Digest, to_bytes("h:")};
    encode_into(out.bytes, m);
    return out;
  }

  bool matches(const Value& priv, const Value& pub) const override {
    auto a = priv.kind == Kind::AsymPrivate ? parse(priv) : std::nullopt;
    auto b = pub.kind == Kind::AsymPublic ? parse(pub) : std::nullopt;
    return a && b && a->prefix == "apriv" && b->prefix == "apub" && a->id == b->id;
  }

  Value verify_key(const Value& sig_key) const override {
    return atom(Kind::VerifyKey, "vk", key_id(sig_key, Kind::SigKey, "sig", Errc::SchemeMismatch));
  }

  Value sign(const Value& sig_key, ByteView msg) const override {
    auto id = key_id(sig_key, Kind::SigKey, "sig", Errc::SchemeMismatch);
    Value out{Kind::Signature, to_bytes("sgn:" + std::to_string(id) + ":")};
    put_bytes(out.bytes, msg);
    return out;
  }

  bool verify(const Value& vk, ByteView msg, const Value& signature) const override {
    if (vk.kind != Kind::VerifyKey || signature.kind != Kind::Signature) return false;
    auto k = parse(vk);
    auto s = parse(signature);
    if (!k || !s || k->prefix != "vk" || s->prefix != "sgn" || k->id != s->id) return false;
    return std::equal(s->rest.begin(), s->rest.end(), msg.begin(), msg.end());
  }
};

}  // namespace

std::unique_ptr<Backend> make_symbolic_backend() { return std::make_unique<SymbolicBackend>(); }

}  // namespace cryptocubic::detail
