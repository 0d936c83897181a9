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

#include <gtest/gtest.h>

#include <set>

#include "cryptocubic/backend.hpp"
#include "cryptocubic/error.hpp"
#include "support/generators.hpp"

namespace cryptocubic {
namespace {

using testing::random_plaintext;

class BackendTest : public ::testing::TestWithParam<BackendKind> {
 protected:
  std::unique_ptr<Backend> backend = make_backend(GetParam());
  Rng rng{42};
};

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return Errc::SyntaxError;
}

TEST_P(BackendTest, GeneratedPairMatches) {
  auto p = backend->gen_asym_pair(rng);
  EXPECT_EQ(p.private_key.kind, Kind::AsymPrivate);
  EXPECT_EQ(p.public_key.kind, Kind::AsymPublic);
  EXPECT_TRUE(backend->matches(p.private_key, p.public_key));
}

TEST_P(BackendTest, PairIdsAreUniqueWithinARun) {
  std::set<std::uint64_t> ids;
  for (int i = 0; i < 50; ++i) EXPECT_TRUE(ids.insert(backend->gen_asym_pair(rng).id).second);
}

TEST_P(BackendTest, PairsFromDifferentGenerationsDoNotMatch) {
  auto a = backend->gen_asym_pair(rng);
  auto b = backend->gen_asym_pair(rng);
  EXPECT_FALSE(backend->matches(a.private_key, b.public_key));
  EXPECT_FALSE(backend->matches(b.private_key, a.public_key));
}

TEST_P(BackendTest, SameSeedReplaysKeys) {
  Rng r1(42), r2(42);
  EXPECT_EQ(backend->gen_asym_pair(r1).public_key, backend->gen_asym_pair(r2).public_key);
  EXPECT_EQ(backend->gen_sym_key(r1).key, backend->gen_sym_key(r2).key);
}

TEST_P(BackendTest, AsymRoundTripOverRandomPlaintexts) {
  auto p = backend->gen_asym_pair(rng);
  for (int i = 0; i < 100; ++i) {
    auto m = random_plaintext(rng);
    auto c = backend->asym_encrypt(rng, p.public_key, m);
    EXPECT_EQ(c.kind, Kind::AsymCypher);
    EXPECT_EQ(backend->asym_decrypt(p.private_key, c), m);
  }
}

TEST_P(BackendTest, SymRoundTripOverRandomPlaintexts) {
  auto k = backend->gen_sym_key(rng);
  for (int i = 0; i < 100; ++i) {
    auto m = random_plaintext(rng);
    auto c = backend->sym_encrypt(rng, k.key, m);
    EXPECT_EQ(c.kind, Kind::SymCypher);
    EXPECT_EQ(backend->sym_decrypt(k.key, c), m);
  }
}

TEST_P(BackendTest, WrongAsymKeyIsRejected) {
  auto a = backend->gen_asym_pair(rng);
  auto b = backend->gen_asym_pair(rng);
  auto c = backend->asym_encrypt(rng, a.public_key, data_value("Sig_U"));
  EXPECT_EQ(code_of([&] { backend->asym_decrypt(b.private_key, c); }), Errc::KeyMismatch);
  EXPECT_FALSE(backend->try_asym_decrypt(b.private_key, c).has_value());
}

TEST_P(BackendTest, WrongSymKeyNeverYieldsThePlaintext) {
  auto k1 = backend->gen_sym_key(rng);
  auto k2 = backend->gen_sym_key(rng);
  for (int i = 0; i < 100; ++i) {
    auto m = random_plaintext(rng);
    auto c = backend->sym_encrypt(rng, k1.key, m);
    auto out = backend->try_sym_decrypt(k2.key, c);
    EXPECT_TRUE(!out || *out != m);
  }
}

TEST_P(BackendTest, SchemeMismatchIsReported) {
  auto p = backend->gen_asym_pair(rng);
  auto k = backend->gen_sym_key(rng);
  auto sym_c = backend->sym_encrypt(rng, k.key, data_value("x"));
  auto asym_c = backend->asym_encrypt(rng, p.public_key, data_value("x"));
  EXPECT_EQ(code_of([&] { backend->asym_decrypt(p.private_key, sym_c); }), Errc::SchemeMismatch);
  EXPECT_EQ(code_of([&] { backend->sym_decrypt(k.key, asym_c); }), Errc::SchemeMismatch);
}

TEST_P(BackendTest, EmptyInputsAreRejected) {
  auto p = backend->gen_asym_pair(rng);
  auto k = backend->gen_sym_key(rng);
  EXPECT_EQ(code_of([&] { backend->asym_encrypt(rng, p.public_key, Value{Kind::Data, {}}); }), Errc::EmptyPlaintext);
  EXPECT_EQ(code_of([&] { backend->sym_encrypt(rng, k.key, Value{Kind::Data, {}}); }), Errc::EmptyPlaintext);
  EXPECT_EQ(code_of([&] { backend->hash(Value{Kind::Data, {}}); }), Errc::EmptyInput);
}

TEST_P(BackendTest, MatchesAgreesWithDecryption) {
  std::vector<AsymKeyPair> pairs;
  for (int i = 0; i < 6; ++i) pairs.push_back(backend->gen_asym_pair(rng));
  for (const auto& priv : pairs) {
    for (const auto& pub : pairs) {
      auto c = backend->asym_encrypt(rng, pub.public_key, data_value("probe"));
      const bool decrypts = backend->try_asym_decrypt(priv.private_key, c) == data_value("probe");
      EXPECT_EQ(backend->matches(priv.private_key, pub.public_key), decrypts);
    }
  }
}

TEST_P(BackendTest, HashIsDeterministicAndCollisionFreeOverRandomInputs) {
  std::set<Value> digests;
  std::set<Value> inputs;
  for (int i = 0; i < 1000; ++i) {
    auto m = random_plaintext(rng, 48);
    if (!inputs.insert(m).second) continue;
    auto d = backend->hash(m);
    EXPECT_EQ(d.kind, Kind::Digest);
    EXPECT_EQ(d, backend->hash(m));
    EXPECT_TRUE(digests.insert(d).second) << "collision on input " << describe(m);
  }
  EXPECT_EQ(digests.size(), inputs.size());
}

TEST_P(BackendTest, HashSeparatesKinds) {
  Value a{Kind::Data, to_bytes("same")};
  Value b{Kind::Token, to_bytes("same")};
  EXPECT_NE(backend->hash(a), backend->hash(b));
}

TEST_P(BackendTest, TokensAreReproducibleAndDistinct) {
  Rng r1(7), r2(7);
  std::set<Value> seen;
  for (int i = 0; i < 10000; ++i) {
    auto t1 = backend->gen_token(r1);
    auto t2 = backend->gen_token(r2);
    EXPECT_EQ(t1.value, t2.value);
    EXPECT_FALSE(t1.consumed);
    EXPECT_EQ(t1.value.bytes.size(), 32u);
    seen.insert(t1.value);
  }
  EXPECT_EQ(seen.size(), 10000u);
}

TEST_P(BackendTest, MultisigAddressIsDerivedFromBothVerifyKeys) {
  auto b = backend->gen_multisig(rng);
  EXPECT_NE(b.sig_u, b.sig_s);
  EXPECT_EQ(b.address.kind, Kind::Address);
  EXPECT_EQ(b.address, backend->derive_address(backend->verify_key(b.sig_u), backend->verify_key(b.sig_s)));
  EXPECT_NE(b.address, backend->derive_address(backend->verify_key(b.sig_s), backend->verify_key(b.sig_u)));
}

TEST_P(BackendTest, SignaturesVerifyOnlyUnderTheirKeyAndMessage) {
  auto k1 = backend->gen_sig_key(rng);
  auto k2 = backend->gen_sig_key(rng);
  auto msg = to_bytes("pay 1000 to X");
  auto sig = backend->sign(k1, msg);
  EXPECT_TRUE(backend->verify(backend->verify_key(k1), msg, sig));
  EXPECT_FALSE(backend->verify(backend->verify_key(k2), msg, sig));
  EXPECT_FALSE(backend->verify(backend->verify_key(k1), to_bytes("pay 9999 to X"), sig));
}

TEST_P(BackendTest, CypherOfAnotherBackendIsRejectedNotMisread) {
  auto other = make_backend(GetParam() == BackendKind::Symbolic ? BackendKind::Concrete : BackendKind::Symbolic);
  auto mine = backend->gen_asym_pair(rng);
  auto theirs = other->gen_asym_pair(rng);
  auto c = other->asym_encrypt(rng, theirs.public_key, data_value("x"));
  EXPECT_FALSE(backend->try_asym_decrypt(mine.private_key, c).has_value());
}

INSTANTIATE_TEST_SUITE_P(Backends, BackendTest, ::testing::Values(BackendKind::Symbolic, BackendKind::Concrete),
                         [](const auto& info) { return std::string(backend_name(info.param)); });

TEST(BackendNames, RoundTrip) {
  EXPECT_EQ(parse_backend("symbolic"), BackendKind::Symbolic);
  EXPECT_EQ(parse_backend("concrete"), BackendKind::Concrete);
  EXPECT_THROW(parse_backend("quantum"), Error);
}

TEST(SymbolicBackend, SealedTermsNameTheirKey) {
  auto b = make_backend(BackendKind::Symbolic);
  Rng rng(1);
  auto p = b->gen_asym_pair(rng);
  auto c = b->asym_encrypt(rng, p.public_key, data_value("m"));
  EXPECT_EQ(to_string(p.public_key.bytes), "apub:1");
  EXPECT_TRUE(to_string(c.bytes).starts_with("aenc:1:"));
}

}  // namespace
}  // namespace cryptocubic
