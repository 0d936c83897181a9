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

#include "cryptocubic/transport.hpp"

#include "cryptocubic/error.hpp"

namespace cryptocubic {

std::string_view message_type_name(MessageType t) noexcept {
  switch (t) {
    case MessageType::PublicKey: return "public-key";
    case MessageType::SquareDelivery: return "square-delivery";
    case MessageType::SquareHandoff: return "square-handoff";
    case MessageType::Approve: return "approve";
    case MessageType::KeyRequest: return "key-request";
    case MessageType::KeyDelivery: return "key-delivery";
    case MessageType::Challenge: return "challenge";
    case MessageType::ChallengeResponse: return "challenge-response";
    case MessageType::HashDelivery: return "hash-delivery";
    case MessageType::VerifyResult: return "verify-result";
    case MessageType::Notify: return "notify";
    case MessageType::RedeemRequest: return "redeem-request";
    case MessageType::RedeemDelivery: return "redeem-delivery";
    case MessageType::SigRequest: return "sig-request";
    case MessageType::SigDelivery: return "sig-delivery";
  }
  return "unknown";
}

namespace {

void put_name(Bytes& out, const std::string& s) {
  if (s.size() > 255) throw Error(Errc::MalformedMessage, "party name too long");
  put_u8(out, static_cast<std::uint8_t>(s.size()));
  put_bytes(out, to_bytes(s));
}

std::string read_name(ByteReader& r) { return to_string(r.take(r.u8())); }

}  // namespace

Bytes encode_message(const Message& m) {
  Bytes body;
  put_u8(body, kMessageVersion);
  put_u8(body, static_cast<std::uint8_t>(m.type));
  put_u64(body, m.session);
  put_name(body, m.from);
  put_name(body, m.to);
  put_u8(body, m.confidential ? 1 : 0);
  encode_into(body, m.payload);

  Bytes wire;
  put_u32(wire, static_cast<std::uint32_t>(body.size()));
  put_bytes(wire, body);
  return wire;
}

Message decode_message(ByteView wire) {
  try {
    ByteReader outer(wire);
    auto len = outer.u32();
    if (len != outer.remaining()) throw Error(Errc::MalformedMessage, "length prefix mismatch");
    ByteReader r(outer.take(len));
    if (auto v = r.u8(); v != kMessageVersion) {
      throw Error(Errc::MalformedMessage, "unsupported version " + std::to_string(v));
    }
    Message m;
    auto type = r.u8();
    if (type < 1 || type > static_cast<std::uint8_t>(MessageType::SigDelivery)) {
      throw Error(Errc::MalformedMessage, "unknown message type " + std::to_string(type));
    }
    m.type = static_cast<MessageType>(type);
    m.session = r.u64();
    m.from = read_name(r);
    m.to = read_name(r);
    m.confidential = r.u8() != 0;
    m.payload = decode_next(r);
    if (!r.done()) throw Error(Errc::MalformedMessage, "trailing bytes");
    return m;
  } catch (const Error& e) {
    if (e.code() == Errc::MalformedMessage) throw;
    throw Error(Errc::MalformedMessage, e.what());
  }
}

void Transport::send(const Message& m) {
  ++clock_;
  std::optional<Message> out = interposer_ ? interposer_(m) : std::optional<Message>(m);
  if (!out) return;
  auto wire = encode_message(*out);
  transcript_.push_back({wire, out->confidential});
  queue_.push_back(std::move(wire));
}

std::optional<Message> Transport::receive(std::string_view to, MessageType type, std::uint64_t session) {
  for (auto it = queue_.begin(); it != queue_.end(); ++it) {
    auto m = decode_message(*it);
    if (m.to == to && m.type == type && m.session == session) {
      queue_.erase(it);
      ++clock_;
      return m;
    }
  }
  clock_ += timeout_ticks_;
  return std::nullopt;
}

}  // namespace cryptocubic
