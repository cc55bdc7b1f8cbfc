// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#include "core/bytes.hpp"

namespace ehrl {

namespace {
constexpr char kHexDigits[] = "0123456789abcdef";

int hex_nibble(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}
}  // namespace

std::string to_hex(ByteSpan data) {
  std::string out;
  out.reserve(data.size() * 2);
  for (std::uint8_t b : data) {
    out.push_back(kHexDigits[b >> 4]);
    out.push_back(kHexDigits[b & 0x0f]);
  }
  return out;
}

std::optional<Bytes> from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) return std::nullopt;
  Bytes out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    int hi = hex_nibble(hex[i]);
    int lo = hex_nibble(hex[i + 1]);
    if (hi < 0 || lo < 0) return std::nullopt;
    out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
  }
  return out;
}

void Encoder::u32(std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) {
    out_.push_back(static_cast<std::uint8_t>((v >> shift) & 0xff));
  }
}

void Encoder::u64(std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) {
    out_.push_back(static_cast<std::uint8_t>((v >> shift) & 0xff));
  }
}

void Encoder::bytes(ByteSpan data) {
  u32(static_cast<std::uint32_t>(data.size()));
  raw(data);
}

void Encoder::str(std::string_view s) {
  u32(static_cast<std::uint32_t>(s.size()));
  out_.insert(out_.end(), s.begin(), s.end());
}

bool Decoder::take(std::size_t n, ByteSpan& out) {
  if (data_.size() - pos_ < n) return false;
  out = data_.subspan(pos_, n);
  pos_ += n;
  return true;
}

bool Decoder::u8(std::uint8_t& v) {
  ByteSpan s;
  if (!take(1, s)) return false;
  v = s[0];
  return true;
}

bool Decoder::u32(std::uint32_t& v) {
  ByteSpan s;
  if (!take(4, s)) return false;
  v = 0;
  for (std::uint8_t b : s) v = (v << 8) | b;
  return true;
}

bool Decoder::u64(std::uint64_t& v) {
  ByteSpan s;
  if (!take(8, s)) return false;
  v = 0;
  for (std::uint8_t b : s) v = (v << 8) | b;
  return true;
}

bool Decoder::raw(std::span<std::uint8_t> out) {
  ByteSpan s;
  if (!take(out.size(), s)) return false;
  std::copy(s.begin(), s.end(), out.begin());
  return true;
}

bool Decoder::bytes(Bytes& out) {
  std::uint32_t len = 0;
  if (!u32(len)) return false;
  ByteSpan s;
  if (!take(len, s)) return false;
  out.assign(s.begin(), s.end());
  return true;
}

bool Decoder::str(std::string& out) {
  Bytes tmp;
  if (!bytes(tmp)) return false;
  out.assign(tmp.begin(), tmp.end());
  return true;
}

}  // namespace ehrl
