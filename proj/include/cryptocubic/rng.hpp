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
#include <random>
#include <span>

#include "cryptocubic/bytes.hpp"

namespace cryptocubic {

/// Seeded, single-owner random source. A fixed seed reproduces every key,
/// nonce, token and id drawn from it.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  void fill(std::span<std::uint8_t> out);
  Bytes bytes(std::size_t n);
  /// Run-unique identifier; strictly increasing.
  std::uint64_t next_id() noexcept { return ++ids_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t ids_ = 0;
};

}  // namespace cryptocubic
