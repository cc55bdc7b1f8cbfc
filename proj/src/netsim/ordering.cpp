// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#include "netsim/ordering.hpp"

namespace ehrl::netsim {

OrderingService::OrderingService(std::uint32_t block_size, std::uint32_t batch_timeout,
                                 std::uint32_t node_count, const Digest32& genesis_hash)
    : block_size_(block_size),
      batch_timeout_(batch_timeout),
      next_number_(1),
      prev_hash_(genesis_hash),
      node_logs_(node_count, genesis_hash) {}

void OrderingService::submit(ledger::Transaction tx) {
  ordered_ids_.push_back(tx.tx_id);
  queue_.push_back(std::move(tx));
}

std::shared_ptr<const ledger::Block> OrderingService::cut(std::size_t count) {
  ledger::Block block;
  block.number = next_number_++;
  block.prev_hash = prev_hash_;
  block.transactions.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    block.transactions.push_back(std::move(queue_.front()));
    queue_.pop_front();
  }
  block.data_hash = block.compute_data_hash();
  prev_hash_ = hash_block(block);
  // Followers replicate the leader's cut; each log folds in the new hash.
  for (auto& log : node_logs_) {
    Encoder enc;
    enc.raw(log);
    enc.raw(prev_hash_);
    log = sha256(enc.view());
  }
  ticks_waiting_ = 0;
  return std::make_shared<const ledger::Block>(std::move(block));
}

std::vector<std::shared_ptr<const ledger::Block>> OrderingService::tick() {
  std::vector<std::shared_ptr<const ledger::Block>> out;
  while (queue_.size() >= block_size_) out.push_back(cut(block_size_));
  if (!queue_.empty()) {
    if (++ticks_waiting_ >= batch_timeout_) out.push_back(cut(queue_.size()));
  } else {
    ticks_waiting_ = 0;
  }
  return out;
}

std::vector<std::shared_ptr<const ledger::Block>> OrderingService::flush() {
  std::vector<std::shared_ptr<const ledger::Block>> out;
  while (queue_.size() >= block_size_) out.push_back(cut(block_size_));
  if (!queue_.empty()) out.push_back(cut(queue_.size()));
  return out;
}

}  // namespace ehrl::netsim
