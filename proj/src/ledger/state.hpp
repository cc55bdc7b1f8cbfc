// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <utility>

#include "core/bytes.hpp"
#include "ledger/types.hpp"

namespace ehrl::ledger {

struct StateEntry {
  Bytes value;
  Version version;
};

/// Public anchor of a private-data write. Survives purging: after the
/// plaintext is destroyed the hash remains as tamper evidence.
struct AnchorEntry {
  Digest32 anchor{};
  Version version;
  bool purged = false;
};

/// Committed key-value state of one peer, derived purely from valid
/// transactions in delivered blocks.
class WorldState {
 public:
  const StateEntry* get(const std::string& key) const;
  const AnchorEntry* get_anchor(const std::string& collection, const std::string& key) const;

  /// Folds every transaction flagged valid into the state, in block order.
  void apply_block(const Block& block);

  std::size_t size() const { return entries_.size(); }
  std::uint64_t committed_blocks() const { return committed_blocks_; }

  /// Deterministic JSON rendering of the full state, anchors included.
  /// Byte-identical across peers iff the states are equal.
  std::string snapshot_json() const;
  Digest32 snapshot_digest() const;

 private:
  std::unordered_map<std::string, StateEntry> entries_;
  std::map<std::pair<std::string, std::string>, AnchorEntry> anchors_;
  std::uint64_t committed_blocks_ = 0;
};

}  // namespace ehrl::ledger
