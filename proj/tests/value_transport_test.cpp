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

#include "cryptocubic/error.hpp"
#include "cryptocubic/party.hpp"
#include "cryptocubic/transport.hpp"
#include "cryptocubic/value.hpp"
#include "support/generators.hpp"

namespace cryptocubic {
namespace {

TEST(Bytes, LittleEndianIntegers) {
  Bytes b;
  put_u32(b, 0x01020304);
  put_u64(b, 5);
  EXPECT_EQ(to_hex(ByteView(b).first(4)), "04030201");
  ByteReader r(b);
  EXPECT_EQ(r.u32(), 0x01020304u);
  EXPECT_EQ(r.u64(), 5u);
  EXPECT_TRUE(r.done());
  EXPECT_THROW(r.u8(), Error);
}

TEST(Value, EncodingIsKindLengthPayload) {
  auto e = encode(Value{Kind::Token, to_bytes("ab")});
  EXPECT_EQ(to_hex(e), "0a020000006162");
}

TEST(Value, RandomValuesRoundTrip) {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    auto v = testing::random_plaintext(rng);
    EXPECT_EQ(decode(encode(v)), v);
  }
}

TEST(Value, TuplesNestAndOpen) {
  auto inner = make_tuple({data_value("x"), data_value("y")});
  auto outer = make_tuple({inner, Value{Kind::Address, to_bytes("ADD")}});
  auto items = open_tuple(outer);
  ASSERT_EQ(items.size(), 2u);
  EXPECT_EQ(items[0], inner);
  EXPECT_EQ(open_tuple(items[0]).at(1), data_value("y"));
  EXPECT_EQ(decode(encode(outer)), outer);
}

TEST(Value, MalformedInputIsRejected) {
  EXPECT_THROW(decode(Bytes{0x0d, 0x05, 0x00, 0x00, 0x00, 'a'}), Error);
  EXPECT_THROW(decode(Bytes{0x00, 0x00, 0x00, 0x00, 0x00}), Error);
  EXPECT_THROW(decode(Bytes{0x0d, 0x00, 0x00, 0x00, 0x00, 0xff}), Error);
  EXPECT_THROW(open_tuple(data_value("not a tuple")), Error);
}

TEST(Value, OrderingIsByKindThenBytes) {
  EXPECT_LT((Value{Kind::AsymPrivate, to_bytes("z")}), (Value{Kind::SymKey, to_bytes("a")}));
  EXPECT_LT(data_value("a"), data_value("b"));
}

TEST(Value, DescribeIsShort) {
  EXPECT_EQ(describe(data_value("hello")), "data(hello)");
  EXPECT_EQ(describe(Value{Kind::Digest, Bytes(32, 0xff)}), "digest(ffffffffffffffff...)");
}

Message sample() {
  return Message{MessageType::SquareHandoff, 42, "A", "B", make_tuple({data_value("Es"), data_value("ADD")}), false};
}

TEST(Transport, MessagesRoundTripThroughTheWireSchema) {
  auto m = sample();
  m.confidential = true;
  EXPECT_EQ(decode_message(encode_message(m)), m);
}

TEST(Transport, WireLayoutIsStable) {
  Message m{MessageType::Notify, 1, "S", "A", data_value("ok"), false};
  EXPECT_EQ(to_hex(encode_message(m)), "16000000010b010000000000000001530141000d020000006f6b");
}

TEST(Transport, MalformedWireIsRejected) {
  auto wire = encode_message(sample());
  auto bad_version = wire;
  bad_version[4] = 9;
  auto bad_type = wire;
  bad_type[5] = 99;
  auto truncated = wire;
  truncated.pop_back();
  for (const auto& w : {bad_version, bad_type, truncated}) {
    try {
      decode_message(w);
      ADD_FAILURE() << "accepted malformed wire";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::MalformedMessage);
    }
  }
}

TEST(Transport, ReceiveMatchesRecipientTypeAndSession) {
  Transport t(100);
  t.send(sample());
  EXPECT_FALSE(t.receive("B", MessageType::SquareHandoff, 7).has_value());
  EXPECT_FALSE(t.receive("C", MessageType::SquareHandoff, 42).has_value());
  auto got = t.receive("B", MessageType::SquareHandoff, 42);
  ASSERT_TRUE(got.has_value());
  EXPECT_EQ(*got, sample());
  EXPECT_EQ(t.queued(), 0u);
}

TEST(Transport, MissingMessageCostsTheTimeout) {
  Transport t(25);
  t.send(sample());
  auto before = t.now();
  EXPECT_FALSE(t.receive("B", MessageType::Approve, 42).has_value());
  EXPECT_EQ(t.now(), before + 25);
}

TEST(Transport, InterposerCanRewriteAndDrop) {
  Transport t;
  t.set_interposer([](const Message& m) -> std::optional<Message> {
    if (m.session == 1) return std::nullopt;
    Message out = m;
    out.payload = data_value("forged");
    return out;
  });
  auto dropped = sample();
  dropped.session = 1;
  t.send(dropped);
  t.send(sample());
  EXPECT_EQ(t.transcript().size(), 1u);
  EXPECT_EQ(t.receive("B", MessageType::SquareHandoff, 42)->payload, data_value("forged"));
  t.clear_interposer();
  t.send(sample());
  EXPECT_EQ(t.receive("B", MessageType::SquareHandoff, 42)->payload, sample().payload);
}

TEST(Transport, TranscriptRecordsConfidentiality) {
  Transport t;
  auto m = sample();
  t.send(m);
  m.confidential = true;
  t.send(m);
  ASSERT_EQ(t.transcript().size(), 2u);
  EXPECT_FALSE(t.transcript()[0].confidential);
  EXPECT_TRUE(t.transcript()[1].confidential);
}

TEST(PartyMemory, PutFindEraseAndOrder) {
  PartyMemory mem;
  mem.put("Ka_Public", Role::PublicKey, data_value("pub"));
  mem.put("Ka", Role::PrivateKey, data_value("priv"));
  mem.put("Es", Role::SquareCypher, data_value("es"), 1);
  mem.put("Ka_Public", Role::PublicKey, data_value("pub2"));
  EXPECT_EQ(mem.at("Ka_Public"), data_value("pub2"));
  EXPECT_FALSE(mem.contains("Es"));
  EXPECT_TRUE(mem.contains("Es", 1));
  std::vector<std::string> names;
  for (const auto* e : mem.ordered()) names.push_back(e->name);
  EXPECT_EQ(names, (std::vector<std::string>{"Ka", "Es", "Ka_Public"}));
  EXPECT_TRUE(mem.erase("Ka"));
  EXPECT_FALSE(mem.erase("Ka"));
  try {
    mem.at("Ka");
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::MissingVariable);
  }
}

TEST(DynamicProcedure, BindingsVanishOnTermination) {
  Party server("S", true);
  auto& proc = server.open_procedure(1);
  auto id = proc.id();
  proc.bind("Sig_U", data_value("secret"));
  proc.bind("Sig_U", data_value("rebound"));
  EXPECT_EQ(proc.get("Sig_U"), data_value("rebound"));
  EXPECT_EQ(proc.bindings().size(), 1u);
  server.terminate(id);
  EXPECT_TRUE(server.procedures().empty());
  EXPECT_TRUE(server.memory().entries().empty());
  EXPECT_THROW(server.procedure(id), Error);
}

TEST(DynamicProcedure, TerminateClearsInPlace) {
  DynamicProcedure proc(1, 1);
  proc.bind("Ea", data_value("cypher"));
  proc.note_slot_insert("Ea");
  proc.terminate();
  EXPECT_FALSE(proc.running());
  EXPECT_TRUE(proc.bindings().empty());
  EXPECT_FALSE(proc.has("Ea"));
}

TEST(Party, ScopedNamesAndColumns) {
  EXPECT_EQ(scoped_name("Es", 0), "Es");
  EXPECT_EQ(scoped_name("Es", 1), "Es");
  EXPECT_EQ(scoped_name("Es", 2), "Es#2");
  EXPECT_EQ(Party("A", false).column(), "USER_A");
  EXPECT_EQ(Party("S", true).column(), "SERVER_S");
}

}  // namespace
}  // namespace cryptocubic
