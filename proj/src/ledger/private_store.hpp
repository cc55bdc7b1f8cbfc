// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "core/bytes.hpp"
#include "core/digest.hpp"
#include "ledger/types.hpp"

namespace ehrl::ledger {

/// Who may hold a collection's plaintext, and for how many blocks a value
/// lives before the automatic sweep purges it. No lifetime means values
/// persist until purged explicitly.
struct CollectionPolicy {
  std::string name;
  std::set<std::string> member_orgs;
  std::optional<std::uint64_t> lifetime_blocks;

  bool is_member(const std::string& org) const { return member_orgs.contains(org); }
};

/// Salted commitment to a private value: digest(salt, plaintext). The salt
/// blocks dictionary probes against the public hash.
Digest32 private_anchor(ByteSpan salt, ByteSpan plaintext);
bool verify_private_anchor(const Digest32& anchor, ByteSpan salt, ByteSpan plaintext);

struct PurgeReport {
  std::vector<std::pair<std::string, std::string>> purged;  // collection, key
};

/// Side database of one peer holding the plaintext of collections its
/// organization belongs to. Purging destroys plaintext and salt here; the
/// on-chain anchor is untouched.
class PrivateStore {
 public:
  struct Entry {
    Bytes plaintext;
    Bytes salt;
    Version version;
  };

  void put(const std::string& collection, const std::string& key, Bytes plaintext, Bytes salt,
           Version version);
  /// True iff plaintext existed and is now gone.
  bool purge(const std::string& collection, const std::string& key);
  const Entry* get(const std::string& collection, const std::string& key) const;

  /// Purges every entry older than the policy lifetime at current_block.
  PurgeReport sweep_expired(const CollectionPolicy& policy, std::uint64_t current_block);

  std::size_t size(const std::string& collection) const;

 private:
  std::map<std::string, std::map<std::string, Entry>> collections_;
};

}  // namespace ehrl::ledger
