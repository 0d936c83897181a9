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

#include "cryptocubic/backend.hpp"

#include <string>

#include "backends.hpp"
#include "cryptocubic/error.hpp"

namespace cryptocubic {

std::string_view backend_name(BackendKind k) noexcept {
  return k == BackendKind::Symbolic ? "symbolic" : "concrete";
}

BackendKind parse_backend(std::string_view name) {
  if (name == "symbolic") return BackendKind::Symbolic;
  if (name == "concrete") return BackendKind::Concrete;
  throw Error(Errc::SyntaxError, "unknown backend '" + std::string(name) + "'");
}

Token Backend::gen_token(Rng& rng) const { return Token{Value{Kind::Token, rng.bytes(32)}, false}; }

MultiSigBundle Backend::gen_multisig(Rng& rng) const {
  MultiSigBundle b;
  b.sig_u = gen_sig_key(rng);
  b.sig_s = gen_sig_key(rng);
  b.address = derive_address(verify_key(b.sig_u), verify_key(b.sig_s));
  return b;
}

Value Backend::derive_address(const Value& vk_u, const Value& vk_s) const {
  auto digest = hash(make_tuple({vk_u, vk_s}));
  return Value{Kind::Address, std::move(digest.bytes)};
}

std::optional<Value> Backend::try_asym_decrypt(const Value& priv, const Value& cypher) const {
  try {
    return asym_decrypt(priv, cypher);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::optional<Value> Backend::try_sym_decrypt(const Value& key, const Value& cypher) const {
  try {
    return sym_decrypt(key, cypher);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::unique_ptr<Backend> make_backend(BackendKind kind) {
  return kind == BackendKind::Symbolic ? detail::make_symbolic_backend() : detail::make_concrete_backend();
}

}  // namespace cryptocubic
