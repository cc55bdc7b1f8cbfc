// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#include "core/group.hpp"

#include <sodium.h>

#include <cstring>
#include <stdexcept>

#include "core/digest.hpp"

namespace ehrl::group {

static_assert(Scalar::kSize == crypto_core_ristretto255_SCALARBYTES);
static_assert(Point::kSize == crypto_core_ristretto255_BYTES);

Scalar Scalar::random(RandomSource& rng) {
  ensure_crypto_init();
  std::uint8_t wide[64];
  rng.fill(wide);
  Scalar s;
  crypto_core_ristretto255_scalar_reduce(s.bytes_.data(), wide);
  return s;
}

Scalar Scalar::from_hash(ByteSpan data) {
  ensure_crypto_init();
  // 256-bit digest, zero-extended to the 64-byte reduction input.
  Digest32 d = sha256(data);
  std::uint8_t wide[64] = {};
  std::memcpy(wide, d.data(), d.size());
  Scalar s;
  crypto_core_ristretto255_scalar_reduce(s.bytes_.data(), wide);
  return s;
}

std::optional<Scalar> Scalar::from_bytes(ByteSpan data) {
  ensure_crypto_init();
  if (data.size() != kSize) return std::nullopt;
  Scalar s;
  std::memcpy(s.bytes_.data(), data.data(), kSize);
  // Only the canonical encoding is accepted. libsodium masks the top bit
  // during scalar multiplication, so without this check two different byte
  // strings could drive the same group computation.
  std::uint8_t wide[64] = {};
  std::memcpy(wide, s.bytes_.data(), kSize);
  Scalar reduced;
  crypto_core_ristretto255_scalar_reduce(reduced.bytes_.data(), wide);
  if (!(reduced == s)) return std::nullopt;
  return s;
}

Scalar Scalar::add(const Scalar& other) const {
  Scalar out;
  crypto_core_ristretto255_scalar_add(out.bytes_.data(), bytes_.data(), other.bytes_.data());
  return out;
}

Scalar Scalar::sub(const Scalar& other) const {
  Scalar out;
  crypto_core_ristretto255_scalar_sub(out.bytes_.data(), bytes_.data(), other.bytes_.data());
  return out;
}

Scalar Scalar::mul(const Scalar& other) const {
  Scalar out;
  crypto_core_ristretto255_scalar_mul(out.bytes_.data(), bytes_.data(), other.bytes_.data());
  return out;
}

Scalar Scalar::negate() const {
  Scalar out;
  crypto_core_ristretto255_scalar_negate(out.bytes_.data(), bytes_.data());
  return out;
}

bool Scalar::is_zero() const {
  return sodium_is_zero(bytes_.data(), bytes_.size()) == 1;
}

Point Point::base_mul(const Scalar& s) {
  ensure_crypto_init();
  Point p;
  if (crypto_scalarmult_ristretto255_base(p.bytes_.data(), s.bytes().data()) != 0) {
    throw std::invalid_argument("scalar must be nonzero for base multiplication");
  }
  return p;
}

Point Point::hash_to_group(ByteSpan data) {
  ensure_crypto_init();
  std::uint8_t wide[64];
  crypto_hash_sha512(wide, data.data(), data.size());
  Point p;
  crypto_core_ristretto255_from_hash(p.bytes_.data(), wide);
  return p;
}

std::optional<Point> Point::from_bytes(ByteSpan data) {
  ensure_crypto_init();
  if (data.size() != kSize) return std::nullopt;
  if (crypto_core_ristretto255_is_valid_point(data.data()) != 1) return std::nullopt;
  Point p;
  std::memcpy(p.bytes_.data(), data.data(), kSize);
  return p;
}

Point Point::mul(const Scalar& s) const {
  Point out;
  if (crypto_scalarmult_ristretto255(out.bytes_.data(), s.bytes().data(), bytes_.data()) != 0) {
    throw std::invalid_argument("scalar-point multiplication degenerated to identity");
  }
  return out;
}

std::optional<Point> Point::mul_checked(const Scalar& s) const {
  Point out;
  if (crypto_scalarmult_ristretto255(out.bytes_.data(), s.bytes().data(), bytes_.data()) != 0) {
    return std::nullopt;
  }
  return out;
}

Point Point::add(const Point& other) const {
  Point out;
  if (crypto_core_ristretto255_add(out.bytes_.data(), bytes_.data(), other.bytes_.data()) != 0) {
    throw std::invalid_argument("invalid point addition operand");
  }
  return out;
}

Point Point::sub(const Point& other) const {
  Point out;
  if (crypto_core_ristretto255_sub(out.bytes_.data(), bytes_.data(), other.bytes_.data()) != 0) {
    throw std::invalid_argument("invalid point subtraction operand");
  }
  return out;
}

}  // namespace ehrl::group
