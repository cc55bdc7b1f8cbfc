// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "core/bytes.hpp"
#include "core/errors.hpp"
#include "ledger/private_store.hpp"
#include "ledger/state.hpp"
#include "ledger/types.hpp"

namespace ehrl::chaincode {

/// Collection holding patient name and address plaintext. Membership is
/// configured per network; by default only the health center org belongs.
inline constexpr const char* kPrivateCollection = "org1-private";

/// Patient record as clients see it. Name and address never enter public
/// state; they travel through the transient map into the collection.
struct EHRRecord {
  std::string id;
  std::string name;
  std::string address;
  std::string country;
  std::string dateOfBirth;
  std::string test;

  nlohmann::json to_json() const;
  static std::optional<EHRRecord> from_json(const nlohmann::json& j);
};

std::string record_key(const std::string& id);

/// Public world-state slice of a record.
struct PublicRecordView {
  std::string id;
  std::string country;
  std::string dateOfBirth;
  std::string test;
  bool deleted = false;

  nlohmann::json to_json() const;
  static std::optional<PublicRecordView> from_json(const nlohmann::json& j);
  Bytes encode() const;
  static std::optional<PublicRecordView> decode(ByteSpan data);
};

Bytes encode_private_pair(const std::string& name, const std::string& address);
std::optional<std::pair<std::string, std::string>> decode_private_pair(ByteSpan data);

/// Resolved caller as the endorsing peer sees it: from a certificate, the
/// org it names; from a credential showing, the revealed org attribute.
struct CallerContext {
  std::string org_name;
  bool anonymous = false;
};

/// Endorser-local read access used while simulating an invocation.
struct ChaincodeView {
  const ledger::WorldState* state = nullptr;
  /// Plaintext side database, null when the endorsing org is not a
  /// collection member.
  const ledger::PrivateStore* private_store = nullptr;
  ledger::CollectionPolicy collection;
};

/// Plaintext companion of one PrivateWrite, distributed to member peers
/// off-chain and never serialized into the transaction.
struct PrivateDelta {
  std::string collection;
  std::string key;
  ledger::PrivateOp op = ledger::PrivateOp::write;
  Bytes plaintext;
  Bytes salt;
};

/// Simulation output: read/write sets for ordering plus the side effects
/// and the client-visible response.
struct Proposal {
  std::vector<ledger::ReadItem> read_set;
  std::vector<ledger::WriteItem> write_set;
  std::vector<ledger::PrivateWrite> private_writes;
  std::vector<PrivateDelta> private_payloads;
  nlohmann::json response;
};

/// name / address / salt material that must stay off the public channel.
using TransientMap = std::map<std::string, std::string>;

/// Dispatch one invocation: create, read, read-private, update, delete.
Result<Proposal> execute(const CallerContext& ctx, const ChaincodeView& view,
                         const ledger::Invocation& invocation, const TransientMap& transient);

}  // namespace ehrl::chaincode
