// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "core/bytes.hpp"
#include "core/digest.hpp"
#include "identity/anoncred.hpp"
#include "identity/msp.hpp"

namespace ehrl::ledger {

/// Position of a committed write: block number plus transaction index
/// within the block. The unit of multi-version concurrency control.
struct Version {
  std::uint64_t block = 0;
  std::uint32_t tx = 0;
  bool operator==(const Version& other) const = default;
};

/// One simulated read. No version means the key was absent when the
/// endorser executed.
struct ReadItem {
  std::string key;
  std::optional<Version> version;
  bool operator==(const ReadItem& other) const = default;
};

/// One buffered write. No value means delete.
struct WriteItem {
  std::string key;
  std::optional<Bytes> value;
  bool operator==(const WriteItem& other) const = default;
};

enum class PrivateOp : std::uint8_t { write = 0, purge = 1 };

/// Public footprint of a private-data operation. Only the salted hash of
/// the plaintext ever reaches the ordering service.
struct PrivateWrite {
  std::string collection;
  std::string key;
  PrivateOp op = PrivateOp::write;
  Digest32 value_hash{};
  bool operator==(const PrivateWrite& other) const = default;
};

struct Endorsement {
  identity::StandardIdentity endorser;
  identity::Signature signature{};  // over tx_id
  bool operator==(const Endorsement& other) const = default;
};

/// Submitting client: either a standard certificate or an anonymous
/// credential showing.
using Creator = std::variant<identity::StandardIdentity, identity::Presentation>;

struct Invocation {
  std::string function;
  std::vector<std::string> args;
  bool operator==(const Invocation& other) const = default;
};

struct Transaction {
  Digest32 tx_id{};
  Invocation invocation;
  Bytes nonce;  // client freshness, keeps ids of identical invocations apart
  std::vector<ReadItem> read_set;
  std::vector<WriteItem> write_set;
  std::vector<PrivateWrite> private_writes;
  Creator creator;
  std::vector<Endorsement> endorsements;

  /// Canonical bytes of everything the id covers, i.e. the whole
  /// transaction except endorsements and the id itself.
  Bytes canonical_body() const;
  Digest32 compute_id() const;

  Bytes to_bytes() const;
  static std::optional<Transaction> from_bytes(ByteSpan data);

  bool anonymous() const { return std::holds_alternative<identity::Presentation>(creator); }
  bool operator==(const Transaction& other) const;
};

enum class TxFlag : std::uint8_t { valid = 0, invalid_endorsement = 1, invalid_mvcc = 2 };

const char* flag_name(TxFlag flag);

struct Block {
  std::uint64_t number = 0;
  Digest32 prev_hash{};
  Digest32 data_hash{};
  std::vector<Transaction> transactions;
  /// Set by validators after ordering, one flag per transaction. Not part
  /// of the hash chain; the chain commits to headers and payload bytes.
  std::vector<TxFlag> validation_flags;

  Bytes header_bytes() const;
  /// Digest over the full canonical encodings of all transactions, so any
  /// payload byte, endorsements included, is committed.
  Digest32 compute_data_hash() const;

  Bytes to_bytes() const;
  static std::optional<Block> from_bytes(ByteSpan data);
};

/// Block hash = digest of the header. prev_hash links form the chain.
Digest32 hash_block(const Block& block);

}  // namespace ehrl::ledger
