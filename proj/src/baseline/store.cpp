// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#include "baseline/store.hpp"

#include <sodium.h>

#include <algorithm>

#include <nlohmann/json.hpp>

namespace ehrl::baseline {

static_assert(crypto_secretbox_KEYBYTES == 32);

BaselineStore::BaselineStore(std::uint64_t seed)
    : nonce_rng_(DeterministicRng(seed).fork("baseline-nonces")) {
  DeterministicRng key_rng = DeterministicRng(seed).fork("baseline-key");
  key_rng.fill(key_);
}

Bytes BaselineStore::encrypt(const std::string& plaintext) {
  Bytes boxed(crypto_secretbox_NONCEBYTES + plaintext.size() + crypto_secretbox_MACBYTES);
  nonce_rng_.fill(std::span(boxed.data(), crypto_secretbox_NONCEBYTES));
  crypto_secretbox_easy(boxed.data() + crypto_secretbox_NONCEBYTES,
                        reinterpret_cast<const unsigned char*>(plaintext.data()),
                        plaintext.size(), boxed.data(), key_.data());
  return boxed;
}

Result<std::string> BaselineStore::decrypt(const Bytes& boxed) const {
  if (boxed.size() < crypto_secretbox_NONCEBYTES + crypto_secretbox_MACBYTES) {
    return Error{Err::internal, "ciphertext too short"};
  }
  std::string plaintext(boxed.size() - crypto_secretbox_NONCEBYTES - crypto_secretbox_MACBYTES,
                        '\0');
  if (crypto_secretbox_open_easy(reinterpret_cast<unsigned char*>(plaintext.data()),
                                 boxed.data() + crypto_secretbox_NONCEBYTES,
                                 boxed.size() - crypto_secretbox_NONCEBYTES, boxed.data(),
                                 key_.data()) != 0) {
    return Error{Err::internal, "ciphertext authentication failed"};
  }
  return plaintext;
}

Result<void> BaselineStore::insert(const chaincode::EHRRecord& record) {
  if (ids_.contains(record.id)) {
    return Error{Err::duplicate, "row " + record.id + " already exists"};
  }
  BaselineRow row;
  row.id = record.id;
  row.country = record.country;
  row.dateOfBirth = record.dateOfBirth;
  row.test = record.test;
  row.name_ct = encrypt(record.name);
  row.address_ct = encrypt(record.address);
  rows_.push_back(std::move(row));
  ids_.insert(record.id);
  return {};
}

Result<chaincode::EHRRecord> BaselineStore::read(const std::string& id) const {
  for (const BaselineRow& row : rows_) {
    if (row.id != id) continue;
    chaincode::EHRRecord record;
    record.id = row.id;
    record.country = row.country;
    record.dateOfBirth = row.dateOfBirth;
    record.test = row.test;
    auto name = decrypt(row.name_ct);
    if (!name.ok()) return name.error();
    auto address = decrypt(row.address_ct);
    if (!address.ok()) return address.error();
    record.name = std::move(name.value());
    record.address = std::move(address.value());
    return record;
  }
  return Error{Err::not_found, "row " + id + " does not exist"};
}

Result<void> BaselineStore::update(const chaincode::EHRRecord& record) {
  for (BaselineRow& row : rows_) {
    if (row.id != record.id) continue;
    row.country = record.country;
    row.dateOfBirth = record.dateOfBirth;
    row.test = record.test;
    row.name_ct = encrypt(record.name);
    row.address_ct = encrypt(record.address);
    return {};
  }
  return Error{Err::not_found, "row " + record.id + " does not exist"};
}

Result<void> BaselineStore::remove(const std::string& id) {
  auto row = std::find_if(rows_.begin(), rows_.end(),
                          [&](const BaselineRow& r) { return r.id == id; });
  if (row == rows_.end()) return Error{Err::not_found, "row " + id + " does not exist"};
  rows_.erase(row);
  ids_.erase(id);
  return {};
}

Result<std::size_t> BaselineStore::load_jsonl(std::string_view lines) {
  std::size_t loaded = 0;
  std::size_t pos = 0;
  while (pos < lines.size()) {
    std::size_t end = lines.find('\n', pos);
    if (end == std::string_view::npos) end = lines.size();
    std::string_view line = lines.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    auto parsed = nlohmann::json::parse(line, nullptr, false);
    if (parsed.is_discarded()) return Error{Err::invalid_argument, "undecodable record line"};
    auto record = chaincode::EHRRecord::from_json(parsed);
    if (!record) return Error{Err::invalid_argument, "record line missing required fields"};
    auto inserted = insert(*record);
    if (!inserted.ok()) return inserted.error();
    ++loaded;
  }
  return loaded;
}

Bytes BaselineStore::serialize() const {
  Encoder enc;
  enc.u32(static_cast<std::uint32_t>(rows_.size()));
  for (const BaselineRow& row : rows_) {
    enc.str(row.id);
    enc.str(row.country);
    enc.str(row.dateOfBirth);
    enc.str(row.test);
    enc.bytes(row.name_ct);
    enc.bytes(row.address_ct);
  }
  return enc.take();
}

}  // namespace ehrl::baseline
