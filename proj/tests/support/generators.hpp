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
#include <string>
#include <vector>

#include "cryptocubic/backend.hpp"
#include "cryptocubic/rng.hpp"
#include "cryptocubic/value.hpp"

namespace cryptocubic::testing {

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng.next_u64() % (hi - lo + 1));
}

/// Non-empty plaintext of a random kind and length 1..max_len.
inline Value random_plaintext(Rng& rng, std::size_t max_len = 96) {
  static constexpr Kind kinds[] = {Kind::Data, Kind::SigKey, Kind::Token, Kind::Digest, Kind::Address};
  Value v{kinds[uniform(rng, 0, std::size(kinds) - 1)], rng.bytes(uniform(rng, 1, max_len))};
  return v;
}

/// Keys shared by the terms of one random knowledge world.
struct KeyPool {
  std::vector<AsymKeyPair> asym;
  std::vector<SymKey> sym;
  std::vector<Value> sig;
};

inline KeyPool random_key_pool(const Backend& b, Rng& rng) {
  KeyPool pool;
  for (std::size_t i = 0, n = uniform(rng, 1, 3); i < n; ++i) pool.asym.push_back(b.gen_asym_pair(rng));
  for (std::size_t i = 0, n = uniform(rng, 1, 3); i < n; ++i) pool.sym.push_back(b.gen_sym_key(rng));
  for (std::size_t i = 0, n = uniform(rng, 1, 3); i < n; ++i) pool.sig.push_back(b.gen_sig_key(rng));
  return pool;
}

/// A key, a cypher nested up to `depth` deep, a tuple or a digest.
inline Value random_term(const Backend& b, Rng& rng, const KeyPool& pool, int depth = 3) {
  const auto pick = uniform(rng, 0, depth > 0 ? 8 : 4);
  switch (pick) {
    case 0: return pool.asym[uniform(rng, 0, pool.asym.size() - 1)].private_key;
    case 1: return pool.asym[uniform(rng, 0, pool.asym.size() - 1)].public_key;
    case 2: return pool.sym[uniform(rng, 0, pool.sym.size() - 1)].key;
    case 3: return pool.sig[uniform(rng, 0, pool.sig.size() - 1)];
    case 4: return b.gen_token(rng).value;
    case 5: {
      const auto& k = pool.asym[uniform(rng, 0, pool.asym.size() - 1)];
      return b.asym_encrypt(rng, k.public_key, random_term(b, rng, pool, depth - 1));
    }
    case 6: {
      const auto& k = pool.sym[uniform(rng, 0, pool.sym.size() - 1)];
      return b.sym_encrypt(rng, k.key, random_term(b, rng, pool, depth - 1));
    }
    case 7: {
      std::vector<Value> items;
      for (std::size_t i = 0, n = uniform(rng, 1, 3); i < n; ++i) items.push_back(random_term(b, rng, pool, depth - 1));
      return cryptocubic::make_tuple(items);
    }
    default:
      return b.hash(random_term(b, rng, pool, depth - 1));
  }
}

inline std::vector<Value> random_knowledge_set(const Backend& b, Rng& rng, const KeyPool& pool,
                                               std::size_t max_terms = 8) {
  std::vector<Value> out;
  for (std::size_t i = 0, n = uniform(rng, 0, max_terms); i < n; ++i) out.push_back(random_term(b, rng, pool));
  return out;
}

}  // namespace cryptocubic::testing
