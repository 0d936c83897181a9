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

#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>

#include "cryptocubic/bytes.hpp"
#include "cryptocubic/rng.hpp"
#include "cryptocubic/value.hpp"

namespace cryptocubic {

struct AsymKeyPair {
  Value private_key;  // Kind::AsymPrivate
  Value public_key;   // Kind::AsymPublic
  std::uint64_t id = 0;
};

struct SymKey {
  Value key;  // Kind::SymKey
  std::uint64_t id = 0;
};

struct Token {
  Value value;  // Kind::Token, 32 bytes of entropy
  bool consumed = false;
};

/// The two legs of a 2-of-2 MultiSig and the address bound to both.
struct MultiSigBundle {
  Value sig_u;    // Kind::SigKey
  Value sig_s;    // Kind::SigKey
  Value address;  // Kind::Address
};

enum class BackendKind { Symbolic, Concrete };

std::string_view backend_name(BackendKind k) noexcept;
BackendKind parse_backend(std::string_view name);

/// Cryptographic primitive provider. Implementations are stateless; all
/// randomness comes from the caller's Rng so a seed replays a whole run.
///
/// Failures: encrypting an empty plaintext throws EmptyPlaintext, hashing an
/// empty value throws EmptyInput, decrypting with the wrong key throws
/// KeyMismatch and decrypting the wrong cypher scheme throws SchemeMismatch.
class Backend {
 public:
  virtual ~Backend() = default;

  virtual BackendKind kind() const noexcept = 0;

  virtual AsymKeyPair gen_asym_pair(Rng& rng) const = 0;
  virtual SymKey gen_sym_key(Rng& rng) const = 0;
  virtual Value gen_sig_key(Rng& rng) const = 0;

  virtual Value asym_encrypt(Rng& rng, const Value& pub, const Value& plain) const = 0;
  virtual Value asym_decrypt(const Value& priv, const Value& cypher) const = 0;
  virtual Value sym_encrypt(Rng& rng, const Value& key, const Value& plain) const = 0;
  virtual Value sym_decrypt(const Value& key, const Value& cypher) const = 0;

  virtual Value hash(const Value& m) const = 0;
  virtual bool matches(const Value& priv, const Value& pub) const = 0;

  virtual Value verify_key(const Value& sig_key) const = 0;
  virtual Value sign(const Value& sig_key, ByteView msg) const = 0;
  virtual bool verify(const Value& verify_key, ByteView msg, const Value& signature) const = 0;

  Token gen_token(Rng& rng) const;
  MultiSigBundle gen_multisig(Rng& rng) const;
  /// address = hash(verify(sig_u) || verify(sig_s)), tagged as an address.
  Value derive_address(const Value& vk_u, const Value& vk_s) const;

  std::optional<Value> try_asym_decrypt(const Value& priv, const Value& cypher) const;
  std::optional<Value> try_sym_decrypt(const Value& key, const Value& cypher) const;
};

std::unique_ptr<Backend> make_backend(BackendKind kind);

}  // namespace cryptocubic
