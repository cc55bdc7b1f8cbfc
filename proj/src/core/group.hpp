// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "core/bytes.hpp"
#include "core/rng.hpp"

namespace ehrl::group {

/// Scalar in the prime-order group's field (ristretto255, canonical
/// 32-byte little-endian encoding as produced by libsodium).
class Scalar {
 public:
  static constexpr std::size_t kSize = 32;

  Scalar() { bytes_.fill(0); }

  static Scalar random(RandomSource& rng);
  /// Maps arbitrary bytes to a scalar via the suite digest (wide-reduced).
  static Scalar from_hash(ByteSpan data);
  static std::optional<Scalar> from_bytes(ByteSpan data);

  Scalar add(const Scalar& other) const;
  Scalar sub(const Scalar& other) const;
  Scalar mul(const Scalar& other) const;
  Scalar negate() const;

  bool is_zero() const;
  bool operator==(const Scalar& other) const { return bytes_ == other.bytes_; }

  ByteSpan bytes() const { return bytes_; }
  std::string hex() const { return to_hex(bytes_); }

 private:
  std::array<std::uint8_t, kSize> bytes_;
};

/// Group element (ristretto255 point, canonical 32-byte encoding).
class Point {
 public:
  static constexpr std::size_t kSize = 32;

  Point() { bytes_.fill(0); }

  static Point base_mul(const Scalar& s);           // s * basepoint
  static Point hash_to_group(ByteSpan data);        // uniform map, 64-byte input
  static std::optional<Point> from_bytes(ByteSpan data);

  Point mul(const Scalar& s) const;
  /// Returns nullopt where mul() would throw (zero scalar / identity
  /// result); verification paths reject instead of aborting.
  std::optional<Point> mul_checked(const Scalar& s) const;
  Point add(const Point& other) const;
  Point sub(const Point& other) const;

  bool operator==(const Point& other) const { return bytes_ == other.bytes_; }

  ByteSpan bytes() const { return bytes_; }
  std::string hex() const { return to_hex(bytes_); }

 private:
  std::array<std::uint8_t, kSize> bytes_;
};

}  // namespace ehrl::group
