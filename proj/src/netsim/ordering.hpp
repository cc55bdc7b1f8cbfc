// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#pragma once

#include <deque>
#include <memory>
#include <vector>

#include "ledger/types.hpp"

namespace ehrl::netsim {

/// FIFO ordering service with block cutting. Transactions leave in arrival
/// order; a block is cut when block_size transactions are pending or when
/// a batch sits for batch_timeout ticks. The leader cuts and every
/// ordering node replicates the cut log, mimicking a crash-fault-tolerant
/// consenter set.
class OrderingService {
 public:
  OrderingService(std::uint32_t block_size, std::uint32_t batch_timeout,
                  std::uint32_t node_count, const Digest32& genesis_hash);

  void submit(ledger::Transaction tx);

  /// Advances the batch timer one tick and returns any blocks cut, in
  /// order. Fills whole blocks first, then cuts a partial batch when the
  /// timer expires.
  std::vector<std::shared_ptr<const ledger::Block>> tick();
  /// Cuts everything still pending.
  std::vector<std::shared_ptr<const ledger::Block>> flush();

  std::size_t pending() const { return queue_.size(); }
  std::size_t node_count() const { return node_logs_.size(); }
  /// Running digest of one node's replicated log of block hashes.
  Digest32 node_log_digest(std::size_t node) const { return node_logs_.at(node); }
  /// Every transaction id ever ordered, in service arrival order.
  const std::vector<Digest32>& ordered_ids() const { return ordered_ids_; }
  std::uint64_t next_block_number() const { return next_number_; }

 private:
  std::shared_ptr<const ledger::Block> cut(std::size_t count);

  std::uint32_t block_size_;
  std::uint32_t batch_timeout_;
  std::deque<ledger::Transaction> queue_;
  std::uint32_t ticks_waiting_ = 0;
  std::uint64_t next_number_;
  Digest32 prev_hash_;
  std::vector<Digest32> node_logs_;
  std::vector<Digest32> ordered_ids_;
};

}  // namespace ehrl::netsim
