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
#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cryptocubic/bytes.hpp"
#include "cryptocubic/value.hpp"

namespace cryptocubic {

enum class MessageType : std::uint8_t {
  PublicKey = 1,
  SquareDelivery = 2,
  SquareHandoff = 3,
  Approve = 4,
  KeyRequest = 5,
  KeyDelivery = 6,
  Challenge = 7,
  ChallengeResponse = 8,
  HashDelivery = 9,
  VerifyResult = 10,
  Notify = 11,
  RedeemRequest = 12,
  RedeemDelivery = 13,
  SigRequest = 14,
  SigDelivery = 15,
};

std::string_view message_type_name(MessageType t) noexcept;

inline constexpr std::uint8_t kMessageVersion = 1;

struct Message {
  MessageType type = MessageType::PublicKey;
  std::uint64_t session = 0;
  std::string from;
  std::string to;
  Value payload;
  /// Carried on a confidential user<->server channel; passive wiretaps
  /// do not observe it.
  bool confidential = false;

  friend bool operator==(const Message&, const Message&) = default;
};

/// Wire record: u32 length of the rest, then u8 version, u8 type,
/// u64 session, u8-length-prefixed sender and recipient, u8 confidential
/// flag and the encoded payload value.
Bytes encode_message(const Message& m);
Message decode_message(ByteView wire);

struct WireRecord {
  Bytes wire;
  bool confidential = false;
};

/// Deterministic in-process message queue with a logical clock. Every
/// delivered message is serialized through the wire schema. An optional
/// interposer sees each message before delivery and may rewrite or drop it.
class Transport {
 public:
  using Interposer = std::function<std::optional<Message>(const Message&)>;

  explicit Transport(std::uint64_t timeout_ticks = 100) : timeout_ticks_(timeout_ticks) {}

  void send(const Message& m);
  /// First queued message matching (to, type, session). When none is queued
  /// the recipient waits out the timeout and gets nothing.
  std::optional<Message> receive(std::string_view to, MessageType type, std::uint64_t session);

  void set_interposer(Interposer interposer) { interposer_ = std::move(interposer); }
  void clear_interposer() { interposer_ = nullptr; }

  const std::vector<WireRecord>& transcript() const noexcept { return transcript_; }
  std::uint64_t now() const noexcept { return clock_; }
  std::size_t queued() const noexcept { return queue_.size(); }

 private:
  std::uint64_t timeout_ticks_;
  std::uint64_t clock_ = 0;
  Interposer interposer_;
  std::deque<Bytes> queue_;
  std::vector<WireRecord> transcript_;
};

}  // namespace cryptocubic
