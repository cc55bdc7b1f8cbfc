// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#pragma once

#include <memory>
#include <vector>

#include "core/errors.hpp"
#include "ledger/types.hpp"

namespace ehrl::ledger {

/// Append-only block store. Blocks are immutable and shared, so the nine
/// simulated peers hold one copy of every block between them.
class LedgerChain {
 public:
  /// Accepts the block iff its number continues the chain and prev_hash
  /// matches the current tip.
  Result<void> append(std::shared_ptr<const Block> block);

  std::size_t height() const { return blocks_.size(); }
  const Block& at(std::uint64_t number) const { return *blocks_.at(number); }
  std::shared_ptr<const Block> share(std::uint64_t number) const { return blocks_.at(number); }
  /// Hash of the tip header; all zero for an empty chain.
  Digest32 tip_hash() const;

  /// Full audit: numbering, header links, recomputed data hashes and
  /// transaction ids, flag arity. Any single flipped payload byte turns up
  /// as a mismatch here.
  Result<void> verify() const;

  Bytes export_bytes() const;
  static Result<LedgerChain> import_bytes(ByteSpan data);

 private:
  std::vector<std::shared_ptr<const Block>> blocks_;
};

}  // namespace ehrl::ledger
