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

// Concrete backend over libsodium:
//   asymmetric  X25519 + XSalsa20-Poly1305 box with an ephemeral sender key
//               (wire: ephemeral_pk || nonce || box)
//   symmetric   XSalsa20-Poly1305 secretbox (wire: nonce || box)
//   digest      SHA-256 over the encoded value
//   MultiSig    Ed25519 signing keys
// Ephemeral keys and nonces are drawn from the caller's Rng, so a seed
// reproduces every ciphertext bit for bit.

#include <sodium.h>

#include <array>
#include <stdexcept>

#include "backends.hpp"
#include "cryptocubic/error.hpp"

namespace cryptocubic::detail {
namespace {

void require_kind(const Value& v, Kind k, Errc code) {
  if (v.kind != k) throw Error(code, "expected " + std::string(kind_name(k)) + ", got " + std::string(kind_name(v.kind)));
}

void require_size(const Value& v, std::size_t n, Errc code) {
  if (v.bytes.size() != n) throw Error(code, "bad length for " + std::string(kind_name(v.kind)));
}

class ConcreteBackend final : public Backend {
 public:
  ConcreteBackend() {
    if (sodium_init() < 0) throw std::runtime_error("libsodium initialisation failed");
  }

  BackendKind kind() const noexcept override { return BackendKind::Concrete; }

  AsymKeyPair gen_asym_pair(Rng& rng) const override {
    std::array<std::uint8_t, crypto_box_SEEDBYTES> seed{};
    rng.fill(seed);
    AsymKeyPair pair;
    pair.private_key = Value{Kind::AsymPrivate, Bytes(crypto_box_SECRETKEYBYTES)};
    pair.public_key = Value{Kind::AsymPublic, Bytes(crypto_box_PUBLICKEYBYTES)};
    crypto_box_seed_keypair(pair.public_key.bytes.data(), pair.private_key.bytes.data(), seed.data());
    sodium_memzero(seed.data(), seed.size());
    pair.id = rng.next_id();
    return pair;
  }

  SymKey gen_sym_key(Rng& rng) const override {
    auto id = rng.next_id();
    return {Value{Kind::SymKey, rng.bytes(crypto_secretbox_KEYBYTES)}, id};
  }

  Value gen_sig_key(Rng& rng) const override {
    std::array<std::uint8_t, crypto_sign_SEEDBYTES> seed{};
    rng.fill(seed);
    Bytes pk(crypto_sign_PUBLICKEYBYTES);
    Value sk{Kind::SigKey, Bytes(crypto_sign_SECRETKEYBYTES)};
    crypto_sign_seed_keypair(pk.data(), sk.bytes.data(), seed.data());
    sodium_memzero(seed.data(), seed.size());
    return sk;
  }

  Value asym_encrypt(Rng& rng, const Value& pub, const Value& plain) const override {
    if (plain.bytes.empty()) throw Error(Errc::EmptyPlaintext);
    require_kind(pub, Kind::AsymPublic, Errc::SchemeMismatch);
    require_size(pub, crypto_box_PUBLICKEYBYTES, Errc::MalformedValue);
    auto message = encode(plain);

    std::array<std::uint8_t, crypto_box_SEEDBYTES> seed{};
    rng.fill(seed);
    std::array<std::uint8_t, crypto_box_PUBLICKEYBYTES> eph_pk{};
    std::array<std::uint8_t, crypto_box_SECRETKEYBYTES> eph_sk{};
    crypto_box_seed_keypair(eph_pk.data(), eph_sk.data(), seed.data());
    auto nonce = rng.bytes(crypto_box_NONCEBYTES);

    Value out{Kind::AsymCypher, {}};
    put_bytes(out.bytes, eph_pk);
    put_bytes(out.bytes, nonce);
    auto offset = out.bytes.size();
    out.bytes.resize(offset + crypto_box_MACBYTES + message.size());
    const int rc = crypto_box_easy(out.bytes.data() + offset, message.data(), message.size(), nonce.data(),
                                   pub.bytes.data(), eph_sk.data());
    sodium_memzero(eph_sk.data(), eph_sk.size());
    sodium_memzero(seed.data(), seed.size());
    if (rc != 0) throw Error(Errc::KeyMismatch, "public key rejected");
    return out;
  }

  Value asym_decrypt(const Value& priv, const Value& cypher) const override {
    require_kind(cypher, Kind::AsymCypher, Errc::SchemeMismatch);
    require_kind(priv, Kind::AsymPrivate, Errc::KeyMismatch);
    require_size(priv, crypto_box_SECRETKEYBYTES, Errc::KeyMismatch);
    constexpr auto header = crypto_box_PUBLICKEYBYTES + crypto_box_NONCEBYTES;
    if (cypher.bytes.size() < header + crypto_box_MACBYTES) throw Error(Errc::MalformedValue, "short cypher");
    const auto* eph_pk = cypher.bytes.data();
    const auto* nonce = eph_pk + crypto_box_PUBLICKEYBYTES;
    const auto* box = cypher.bytes.data() + header;
    auto box_len = cypher.bytes.size() - header;
    Bytes message(box_len - crypto_box_MACBYTES);
    if (crypto_box_open_easy(message.data(), box, box_len, nonce, eph_pk, priv.bytes.data()) != 0) {
      throw Error(Errc::KeyMismatch, "asymmetric authentication failed");
    }
    return decode(message);
  }

  Value sym_encrypt(Rng& rng, const Value& key, const Value& plain) const override {
    if (plain.bytes.empty()) throw Error(Errc::EmptyPlaintext);
    require_kind(key, Kind::SymKey, Errc::SchemeMismatch);
    require_size(key, crypto_secretbox_KEYBYTES, Errc::MalformedValue);
    auto message = encode(plain);
    auto nonce = rng.bytes(crypto_secretbox_NONCEBYTES);
    Value out{Kind::SymCypher, nonce};
    auto offset = out.bytes.size();
    out.bytes.resize(offset + crypto_secretbox_MACBYTES + message.size());
    crypto_secretbox_easy(out.bytes.data() + offset, message.data(), message.size(), nonce.data(), key.bytes.data());
    return out;
  }

  Value sym_decrypt(const Value& key, const Value& cypher) const override {
    require_kind(cypher, Kind::SymCypher, Errc::SchemeMismatch);
    require_kind(key, Kind::SymKey, Errc::KeyMismatch);
    require_size(key, crypto_secretbox_KEYBYTES, Errc::KeyMismatch);
    if (cypher.bytes.size() < crypto_secretbox_NONCEBYTES + crypto_secretbox_MACBYTES) {
      throw Error(Errc::MalformedValue, "short cypher");
    }
    const auto* nonce = cypher.bytes.data();
    const auto* box = nonce + crypto_secretbox_NONCEBYTES;
    auto box_len = cypher.bytes.size() - crypto_secretbox_NONCEBYTES;
    Bytes message(box_len - crypto_secretbox_MACBYTES);
    if (crypto_secretbox_open_easy(message.data(), box, box_len, nonce, key.bytes.data()) != 0) {
      throw Error(Errc::KeyMismatch, "symmetric authentication failed");
    }
    return decode(message);
  }

  Value hash(const Value& m) const override {
    if (m.bytes.empty()) throw Error(Errc::EmptyInput);
    auto message = encode(m);
    Value out{Kind::Digest, Bytes(crypto_hash_sha256_BYTES)};
    crypto_hash_sha256(out.bytes.data(), message.data(), message.size());
    return out;
  }

  bool matches(const Value& priv, const Value& pub) const override {
    if (priv.kind != Kind::AsymPrivate || pub.kind != Kind::AsymPublic) return false;
    if (priv.bytes.size() != crypto_scalarmult_SCALARBYTES || pub.bytes.size() != crypto_scalarmult_BYTES) {
      return false;
    }
    std::array<std::uint8_t, crypto_scalarmult_BYTES> derived{};
    crypto_scalarmult_base(derived.data(), priv.bytes.data());
    return sodium_memcmp(derived.data(), pub.bytes.data(), derived.size()) == 0;
  }

  Value verify_key(const Value& sig_key) const override {
    require_kind(sig_key, Kind::SigKey, Errc::SchemeMismatch);
    require_size(sig_key, crypto_sign_SECRETKEYBYTES, Errc::MalformedValue);
    Value vk{Kind::VerifyKey, Bytes(crypto_sign_PUBLICKEYBYTES)};
    crypto_sign_ed25519_sk_to_pk(vk.bytes.data(), sig_key.bytes.data());
    return vk;
  }

  Value sign(const Value& sig_key, ByteView msg) const override {
    require_kind(sig_key, Kind::SigKey, Errc::SchemeMismatch);
    require_size(sig_key, crypto_sign_SECRETKEYBYTES, Errc::MalformedValue);
    Value sig{Kind::Signature, Bytes(crypto_sign_BYTES)};
    crypto_sign_detached(sig.bytes.data(), nullptr, msg.data(), msg.size(), sig_key.bytes.data());
    return sig;
  }

  bool verify(const Value& vk, ByteView msg, const Value& signature) const override {
    if (vk.kind != Kind::VerifyKey || signature.kind != Kind::Signature) return false;
    if (vk.bytes.size() != crypto_sign_PUBLICKEYBYTES || signature.bytes.size() != crypto_sign_BYTES) return false;
    return crypto_sign_verify_detached(signature.bytes.data(), msg.data(), msg.size(), vk.bytes.data()) == 0;
  }
};

}  // namespace

std::unique_ptr<Backend> make_concrete_backend() { return std::make_unique<ConcreteBackend>(); }

}  // namespace cryptocubic::detail
