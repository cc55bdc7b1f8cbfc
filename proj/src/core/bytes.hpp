// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ehrl {

using Bytes = std::vector<std::uint8_t>;
using ByteSpan = std::span<const std::uint8_t>;

std::string to_hex(ByteSpan data);
std::optional<Bytes> from_hex(std::string_view hex);

inline Bytes to_bytes(std::string_view s) {
  return Bytes(s.begin(), s.end());
}
inline std::string to_string(ByteSpan b) {
  return std::string(b.begin(), b.end());
}

/// Canonical encoding: fixed-width big-endian integers, u32 length prefixes
/// for variable-size fields, fields in declared order. Hashing and the chain
/// file format both depend on this being bit-exact.
class Encoder {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void raw(ByteSpan data) { out_.insert(out_.end(), data.begin(), data.end()); }
  void bytes(ByteSpan data);  // u32 length prefix + raw
  void str(std::string_view s);

  const Bytes& view() const { return out_; }
  Bytes take() { return std::move(out_); }

 private:
  Bytes out_;
};

/// Cursor over canonical bytes. Every read reports failure instead of
/// advancing past the end; callers bail out on the first false.
class Decoder {
 public:
  explicit Decoder(ByteSpan data) : data_(data) {}

  bool u8(std::uint8_t& v);
  bool u32(std::uint32_t& v);
  bool u64(std::uint64_t& v);
  bool raw(std::span<std::uint8_t> out);
  bool bytes(Bytes& out);
  bool str(std::string& out);
  bool done() const { return pos_ == data_.size(); }
  std::size_t remaining() const { return data_.size() - pos_; }

 private:
  bool take(std::size_t n, ByteSpan& out);
  ByteSpan data_;
  std::size_t pos_ = 0;
};

}  // namespace ehrl
