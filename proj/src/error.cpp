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

#include "cryptocubic/error.hpp"

namespace cryptocubic {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::EmptyPlaintext: return "EmptyPlaintext";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::KeyMismatch: return "KeyMismatch";
    case Errc::SchemeMismatch: return "SchemeMismatch";
    case Errc::MalformedValue: return "MalformedValue";
    case Errc::SlotIdTaken: return "SlotIdTaken";
    case Errc::Unauthorized: return "Unauthorized";
    case Errc::SlotFull: return "SlotFull";
    case Errc::SlotEmpty: return "SlotEmpty";
    case Errc::UnknownSlot: return "UnknownSlot";
    case Errc::PermitUsed: return "PermitUsed";
    case Errc::ValueMismatch: return "ValueMismatch";
    case Errc::DuplicateAddress: return "DuplicateAddress";
    case Errc::UnknownAddress: return "UnknownAddress";
    case Errc::NonPositiveAmount: return "NonPositiveAmount";
    case Errc::InsufficientFunds: return "InsufficientFunds";
    case Errc::BadSignature: return "BadSignature";
    case Errc::MissingSignature: return "MissingSignature";
    case Errc::ReplayedTransaction: return "ReplayedTransaction";
    case Errc::TransportFailure: return "TransportFailure";
    case Errc::MalformedMessage: return "MalformedMessage";
    case Errc::UnknownSquare: return "UnknownSquare";
    case Errc::UnknownParty: return "UnknownParty";
    case Errc::UnknownSession: return "UnknownSession";
    case Errc::MissingVariable: return "MissingVariable";
    case Errc::NotOwner: return "NotOwner";
    case Errc::KaMismatch: return "KaMismatch";
    case Errc::SignatureKeyMismatch: return "SignatureKeyMismatch";
    case Errc::Timeout: return "Timeout";
    case Errc::AuthFailure: return "AuthFailure";
    case Errc::TokenReplay: return "TokenReplay";
    case Errc::CounterfeitCypher: return "CounterfeitCypher";
    case Errc::InvalidPhase: return "InvalidPhase";
    case Errc::ModeMismatch: return "ModeMismatch";
    case Errc::SyntaxError: return "SyntaxError";
  }
  return "Unknown";
}

}  // namespace cryptocubic
