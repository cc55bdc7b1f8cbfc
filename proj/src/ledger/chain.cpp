// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#include "ledger/chain.hpp"

#include <cstring>

namespace ehrl::ledger {

namespace {
constexpr char kMagic[8] = {'E', 'H', 'R', 'L', 'C', 'H', 'N', '1'};
}

Result<void> LedgerChain::append(std::shared_ptr<const Block> block) {
  if (!block) return Error{Err::invalid_argument, "null block"};
  if (block->number != blocks_.size()) {
    return Error{Err::conflict, "block number does not continue the chain"};
  }
  if (block->prev_hash != tip_hash()) {
    return Error{Err::conflict, "prev_hash does not match the tip"};
  }
  if (block->validation_flags.size() != block->transactions.size()) {
    return Error{Err::malformed, "one validation flag per transaction required"};
  }
  blocks_.push_back(std::move(block));
  return {};
}

Digest32 LedgerChain::tip_hash() const {
  if (blocks_.empty()) return kZeroDigest;
  return hash_block(*blocks_.back());
}

Result<void> LedgerChain::verify() const {
  Digest32 prev = kZeroDigest;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const Block& block = *blocks_[i];
    std::string at = "block " + std::to_string(i);
    if (block.number != i) return Error{Err::malformed, at + ": number out of sequence"};
    if (block.prev_hash != prev) return Error{Err::malformed, at + ": broken header link"};
    if (block.data_hash != block.compute_data_hash()) {
      return Error{Err::malformed, at + ": data hash mismatch"};
    }
    if (block.validation_flags.size() != block.transactions.size()) {
      return Error{Err::malformed, at + ": flag arity mismatch"};
    }
    for (std::size_t t = 0; t < block.transactions.size(); ++t) {
      if (block.transactions[t].tx_id != block.transactions[t].compute_id()) {
        return Error{Err::malformed,
                     at + ": tx " + std::to_string(t) + " id does not match its body"};
      }
    }
    prev = hash_block(block);
  }
  return {};
}

Bytes LedgerChain::export_bytes() const {
  Encoder enc;
  enc.raw(ByteSpan(reinterpret_cast<const std::uint8_t*>(kMagic), sizeof(kMagic)));
  enc.u32(static_cast<std::uint32_t>(blocks_.size()));
  for (const auto& block : blocks_) enc.bytes(block->to_bytes());
  return enc.take();
}

Result<LedgerChain> LedgerChain::import_bytes(ByteSpan data) {
  Decoder dec(data);
  std::array<std::uint8_t, sizeof(kMagic)> magic{};
  if (!dec.raw(magic) || std::memcmp(magic.data(), kMagic, sizeof(kMagic)) != 0) {
    return Error{Err::malformed, "bad chain file magic"};
  }
  std::uint32_t count = 0;
  if (!dec.u32(count) || count > dec.remaining()) {
    return Error{Err::malformed, "bad block count"};
  }
  LedgerChain chain;
  for (std::uint32_t i = 0; i < count; ++i) {
    Bytes raw;
    if (!dec.bytes(raw)) return Error{Err::malformed, "truncated block record"};
    auto block = Block::from_bytes(raw);
    if (!block) return Error{Err::malformed, "undecodable block " + std::to_string(i)};
    auto appended = chain.append(std::make_shared<const Block>(std::move(*block)));
    if (!appended.ok()) return appended.error();
  }
  if (!dec.done()) return Error{Err::malformed, "trailing bytes after chain"};
  return chain;
}

}  // namespace ehrl::ledger
