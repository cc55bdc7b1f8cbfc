// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "chaincode/ehr.hpp"
#include "core/bytes.hpp"
#include "core/errors.hpp"
#include "core/rng.hpp"

namespace ehrl::baseline {

/// One table row. Name and address are stored as authenticated ciphertext
/// (nonce prepended), everything else stays plaintext.
struct BaselineRow {
  std::string id;
  std::string country;
  std::string dateOfBirth;
  std::string test;
  Bytes name_ct;
  Bytes address_ct;
};

/// The comparison target: a conventional single-process record table with
/// column-level encryption of the sensitive fields. Inserts append in O(1);
/// reads deliberately scan from the head, so read cost grows linearly with
/// the row count. An indexed store would not show that curve; the scan
/// models the measured behavior of the reference database, not best
/// practice.
class BaselineStore {
 public:
  explicit BaselineStore(std::uint64_t seed);

  /// Appends a row with freshly encrypted sensitive columns. Cost is
  /// independent of store size; the id set exists only to reject
  /// duplicates and is never consulted by reads.
  Result<void> insert(const chaincode::EHRRecord& record);

  /// Sequential scan from the head until the id matches, then decrypt.
  Result<chaincode::EHRRecord> read(const std::string& id) const;

  /// Scan, then rewrite the matching row in place with a fresh nonce.
  Result<void> update(const chaincode::EHRRecord& record);

  /// Scan, then remove the matching row.
  Result<void> remove(const std::string& id);

  /// One JSON record per line, the chaincode interchange format.
  Result<std::size_t> load_jsonl(std::string_view lines);

  std::size_t size() const { return rows_.size(); }
  bool contains(const std::string& id) const { return ids_.contains(id); }

  /// Canonical byte image of every row, ciphertexts included. Exists so
  /// tests can search it for plaintext leaks.
  Bytes serialize() const;

 private:
  Bytes encrypt(const std::string& plaintext);
  Result<std::string> decrypt(const Bytes& boxed) const;

  std::array<std::uint8_t, 32> key_{};
  DeterministicRng nonce_rng_;
  std::vector<BaselineRow> rows_;
  std::unordered_set<std::string> ids_;
};

}  // namespace ehrl::baseline
