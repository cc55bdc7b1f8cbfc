// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#include "ledger/state.hpp"

#include <nlohmann/json.hpp>

namespace ehrl::ledger {

const StateEntry* WorldState::get(const std::string& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

const AnchorEntry* WorldState::get_anchor(const std::string& collection,
                                          const std::string& key) const {
  auto it = anchors_.find({collection, key});
  return it == anchors_.end() ? nullptr : &it->second;
}

void WorldState::apply_block(const Block& block) {
  for (std::size_t t = 0; t < block.transactions.size(); ++t) {
    if (block.validation_flags.at(t) != TxFlag::valid) continue;
    const Transaction& tx = block.transactions[t];
    Version version{block.number, static_cast<std::uint32_t>(t)};
    for (const auto& write : tx.write_set) {
      if (write.value) {
        entries_[write.key] = StateEntry{*write.value, version};
      } else {
        entries_.erase(write.key);
      }
    }
    for (const auto& pw : tx.private_writes) {
      auto& anchor = anchors_[{pw.collection, pw.key}];
      if (pw.op == PrivateOp::write) {
        anchor = AnchorEntry{pw.value_hash, version, false};
      } else {
        // Purge erases plaintext in member stores; publicly the anchor
        // stays, flagged so reads can tell purged from never-written.
        anchor.purged = true;
        anchor.version = version;
      }
    }
  }
  committed_blocks_ = block.number + 1;
}

std::string WorldState::snapshot_json() const {
  // std::map renders in key order, which makes the dump deterministic.
  std::map<std::string, nlohmann::json> entries;
  for (const auto& [key, entry] : entries_) {
    entries[key] = {{"value", to_hex(entry.value)},
                    {"block", entry.version.block},
                    {"tx", entry.version.tx}};
  }
  nlohmann::json entries_json = nlohmann::json::object();
  for (auto& [key, value] : entries) entries_json[key] = std::move(value);

  nlohmann::json anchors_json = nlohmann::json::object();
  for (const auto& [name, anchor] : anchors_) {
    anchors_json[name.first + "/" + name.second] = {{"anchor", to_hex(anchor.anchor)},
                                                    {"block", anchor.version.block},
                                                    {"tx", anchor.version.tx},
                                                    {"purged", anchor.purged}};
  }
  nlohmann::json snapshot{{"blocks", committed_blocks_},
                          {"entries", std::move(entries_json)},
                          {"anchors", std::move(anchors_json)}};
  return snapshot.dump();
}

Digest32 WorldState::snapshot_digest() const {
  return sha256(to_bytes(snapshot_json()));
}

}  // namespace ehrl::ledger
