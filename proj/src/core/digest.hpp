// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#pragma once

#include <sodium.h>

#include <array>
#include <cstdint>

#include "core/bytes.hpp"

namespace ehrl {

using Digest32 = std::array<std::uint8_t, 32>;

inline constexpr Digest32 kZeroDigest{};

/// Idempotent libsodium init; called by everything that touches crypto.
void ensure_crypto_init();

Digest32 sha256(ByteSpan data);

/// Incremental SHA-256, used wherever a digest is built from several
/// canonical fields without materializing the concatenation.
class Sha256 {
 public:
  Sha256();
  void update(ByteSpan data);
  void update_str(std::string_view s) {
    update(ByteSpan(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
  }
  Digest32 finish();

 private:
  crypto_hash_sha256_state state_;
};

}  // namespace ehrl
