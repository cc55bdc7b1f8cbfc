// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#include "ledger/types.hpp"

namespace ehrl::ledger {

namespace {

// Parsing bounds. Every element consumes at least one byte, so a claimed
// count above the remaining payload is rejected before any allocation.
bool plausible(std::uint32_t count, const Decoder& dec) {
  return count <= dec.remaining();
}

void encode_version(Encoder& enc, const std::optional<Version>& version) {
  enc.u8(version ? 1 : 0);
  if (version) {
    enc.u64(version->block);
    enc.u32(version->tx);
  }
}

bool decode_version(Decoder& dec, std::optional<Version>& out) {
  std::uint8_t present = 0;
  if (!dec.u8(present) || present > 1) return false;
  if (present == 0) {
    out.reset();
    return true;
  }
  Version v;
  if (!dec.u64(v.block) || !dec.u32(v.tx)) return false;
  out = v;
  return true;
}

void encode_body(Encoder& enc, const Transaction& tx) {
  enc.str(tx.invocation.function);
  enc.u32(static_cast<std::uint32_t>(tx.invocation.args.size()));
  for (const auto& arg : tx.invocation.args) enc.str(arg);
  enc.bytes(tx.nonce);

  enc.u32(static_cast<std::uint32_t>(tx.read_set.size()));
  for (const auto& item : tx.read_set) {
    enc.str(item.key);
    encode_version(enc, item.version);
  }
  enc.u32(static_cast<std::uint32_t>(tx.write_set.size()));
  for (const auto& item : tx.write_set) {
    enc.str(item.key);
    enc.u8(item.value ? 1 : 0);
    if (item.value) enc.bytes(*item.value);
  }
  enc.u32(static_cast<std::uint32_t>(tx.private_writes.size()));
  for (const auto& item : tx.private_writes) {
    enc.str(item.collection);
    enc.str(item.key);
    enc.u8(static_cast<std::uint8_t>(item.op));
    enc.raw(item.value_hash);
  }

  if (const auto* id = std::get_if<identity::StandardIdentity>(&tx.creator)) {
    enc.u8(0);
    enc.bytes(id->to_bytes());
  } else {
    enc.u8(1);
    enc.bytes(std::get<identity::Presentation>(tx.creator).to_bytes());
  }
}

bool decode_body(Decoder& dec, Transaction& tx) {
  std::uint32_t count = 0;
  if (!dec.str(tx.invocation.function)) return false;
  if (!dec.u32(count) || !plausible(count, dec)) return false;
  tx.invocation.args.resize(count);
  for (auto& arg : tx.invocation.args) {
    if (!dec.str(arg)) return false;
  }
  if (!dec.bytes(tx.nonce)) return false;

  if (!dec.u32(count) || !plausible(count, dec)) return false;
  tx.read_set.resize(count);
  for (auto& item : tx.read_set) {
    if (!dec.str(item.key) || !decode_version(dec, item.version)) return false;
  }
  if (!dec.u32(count) || !plausible(count, dec)) return false;
  tx.write_set.resize(count);
  for (auto& item : tx.write_set) {
    std::uint8_t present = 0;
    if (!dec.str(item.key) || !dec.u8(present) || present > 1) return false;
    if (present == 1) {
      Bytes value;
      if (!dec.bytes(value)) return false;
      item.value = std::move(value);
    }
  }
  if (!dec.u32(count) || !plausible(count, dec)) return false;
  tx.private_writes.resize(count);
  for (auto& item : tx.private_writes) {
    std::uint8_t op = 0;
    if (!dec.str(item.collection) || !dec.str(item.key) || !dec.u8(op)) return false;
    if (op > static_cast<std::uint8_t>(PrivateOp::purge)) return false;
    item.op = static_cast<PrivateOp>(op);
    if (!dec.raw(item.value_hash)) return false;
  }

  std::uint8_t kind = 0;
  Bytes payload;
  if (!dec.u8(kind) || kind > 1 || !dec.bytes(payload)) return false;
  if (kind == 0) {
    auto id = identity::StandardIdentity::from_bytes(payload);
    if (!id) return false;
    tx.creator = std::move(*id);
  } else {
    auto pres = identity::Presentation::from_bytes(payload);
    if (!pres) return false;
    tx.creator = std::move(*pres);
  }
  return true;
}

}  // namespace

Bytes Transaction::canonical_body() const {
  Encoder enc;
  encode_body(enc, *this);
  return enc.take();
}

Digest32 Transaction::compute_id() const {
  return sha256(canonical_body());
}

Bytes Transaction::to_bytes() const {
  Encoder enc;
  encode_body(enc, *this);
  enc.u32(static_cast<std::uint32_t>(endorsements.size()));
  for (const auto& endorsement : endorsements) {
    enc.bytes(endorsement.endorser.to_bytes());
    enc.raw(endorsement.signature);
  }
  return enc.take();
}

std::optional<Transaction> Transaction::from_bytes(ByteSpan data) {
  Decoder dec(data);
  Transaction tx;
  if (!decode_body(dec, tx)) return std::nullopt;
  std::uint32_t count = 0;
  if (!dec.u32(count) || !plausible(count, dec)) return std::nullopt;
  tx.endorsements.resize(count);
  for (auto& endorsement : tx.endorsements) {
    Bytes id_raw;
    if (!dec.bytes(id_raw)) return std::nullopt;
    auto id = identity::StandardIdentity::from_bytes(id_raw);
    if (!id) return std::nullopt;
    endorsement.endorser = std::move(*id);
    if (!dec.raw(endorsement.signature)) return std::nullopt;
  }
  if (!dec.done()) return std::nullopt;
  tx.tx_id = tx.compute_id();
  return tx;
}

bool Transaction::operator==(const Transaction& other) const {
  return tx_id == other.tx_id && to_bytes() == other.to_bytes();
}

const char* flag_name(TxFlag flag) {
  switch (flag) {
    case TxFlag::valid: return "valid";
    case TxFlag::invalid_endorsement: return "invalid-endorsement";
    case TxFlag::invalid_mvcc: return "invalid-mvcc";
  }
  return "unknown";
}

Bytes Block::header_bytes() const {
  Encoder enc;
  enc.u64(number);
  enc.raw(prev_hash);
  enc.raw(data_hash);
  return enc.take();
}

Digest32 Block::compute_data_hash() const {
  Encoder enc;
  enc.u32(static_cast<std::uint32_t>(transactions.size()));
  for (const auto& tx : transactions) enc.bytes(tx.to_bytes());
  return sha256(enc.view());
}

Bytes Block::to_bytes() const {
  Encoder enc;
  enc.u64(number);
  enc.raw(prev_hash);
  enc.raw(data_hash);
  enc.u32(static_cast<std::uint32_t>(transactions.size()));
  for (const auto& tx : transactions) enc.bytes(tx.to_bytes());
  enc.u32(static_cast<std::uint32_t>(validation_flags.size()));
  for (auto flag : validation_flags) enc.u8(static_cast<std::uint8_t>(flag));
  return enc.take();
}

std::optional<Block> Block::from_bytes(ByteSpan data) {
  Decoder dec(data);
  Block block;
  if (!dec.u64(block.number) || !dec.raw(block.prev_hash) || !dec.raw(block.data_hash)) {
    return std::nullopt;
  }
  std::uint32_t count = 0;
  if (!dec.u32(count) || !plausible(count, dec)) return std::nullopt;
  block.transactions.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    Bytes tx_raw;
    if (!dec.bytes(tx_raw)) return std::nullopt;
    auto tx = Transaction::from_bytes(tx_raw);
    if (!tx) return std::nullopt;
    block.transactions.push_back(std::move(*tx));
  }
  std::uint32_t flag_count = 0;
  if (!dec.u32(flag_count) || flag_count != count) return std::nullopt;
  block.validation_flags.resize(flag_count);
  for (auto& flag : block.validation_flags) {
    std::uint8_t raw = 0;
    if (!dec.u8(raw) || raw > static_cast<std::uint8_t>(TxFlag::invalid_mvcc)) {
      return std::nullopt;
    }
    flag = static_cast<TxFlag>(raw);
  }
  if (!dec.done()) return std::nullopt;
  return block;
}

Digest32 hash_block(const Block& block) {
  return sha256(block.header_bytes());
}

}  // namespace ehrl::ledger
