// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#include "ledger/private_store.hpp"

#include <sodium.h>

namespace ehrl::ledger {

Digest32 private_anchor(ByteSpan salt, ByteSpan plaintext) {
  Encoder enc;
  enc.bytes(salt);
  enc.raw(plaintext);
  return sha256(enc.view());
}

bool verify_private_anchor(const Digest32& anchor, ByteSpan salt, ByteSpan plaintext) {
  Digest32 expected = private_anchor(salt, plaintext);
  return sodium_memcmp(expected.data(), anchor.data(), expected.size()) == 0;
}

void PrivateStore::put(const std::string& collection, const std::string& key, Bytes plaintext,
                       Bytes salt, Version version) {
  collections_[collection][key] = Entry{std::move(plaintext), std::move(salt), version};
}

bool PrivateStore::purge(const std::string& collection, const std::string& key) {
  auto coll = collections_.find(collection);
  if (coll == collections_.end()) return false;
  auto entry = coll->second.find(key);
  if (entry == coll->second.end()) return false;
  sodium_memzero(entry->second.plaintext.data(), entry->second.plaintext.size());
  sodium_memzero(entry->second.salt.data(), entry->second.salt.size());
  coll->second.erase(entry);
  return true;
}

const PrivateStore::Entry* PrivateStore::get(const std::string& collection,
                                             const std::string& key) const {
  auto coll = collections_.find(collection);
  if (coll == collections_.end()) return nullptr;
  auto entry = coll->second.find(key);
  return entry == coll->second.end() ? nullptr : &entry->second;
}

PurgeReport PrivateStore::sweep_expired(const CollectionPolicy& policy,
                                        std::uint64_t current_block) {
  PurgeReport report;
  if (!policy.lifetime_blocks) return report;
  auto coll = collections_.find(policy.name);
  if (coll == collections_.end()) return report;
  for (auto it = coll->second.begin(); it != coll->second.end();) {
    if (it->second.version.block + *policy.lifetime_blocks <= current_block) {
      report.purged.emplace_back(policy.name, it->first);
      sodium_memzero(it->second.plaintext.data(), it->second.plaintext.size());
      sodium_memzero(it->second.salt.data(), it->second.salt.size());
      it = coll->second.erase(it);
    } else {
      ++it;
    }
  }
  return report;
}

std::size_t PrivateStore::size(const std::string& collection) const {
  auto coll = collections_.find(collection);
  return coll == collections_.end() ? 0 : coll->second.size();
}

}  // namespace ehrl::ledger
