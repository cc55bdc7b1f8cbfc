// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#include "core/digest.hpp"

#include <stdexcept>

namespace ehrl {

void ensure_crypto_init() {
  static const int rc = sodium_init();
  if (rc < 0) throw std::runtime_error("libsodium initialization failed");
}

Digest32 sha256(ByteSpan data) {
  ensure_crypto_init();
  Digest32 out;
  crypto_hash_sha256(out.data(), data.data(), data.size());
  return out;
}

Sha256::Sha256() {
  ensure_crypto_init();
  crypto_hash_sha256_init(&state_);
}

void Sha256::update(ByteSpan data) {
  crypto_hash_sha256_update(&state_, data.data(), data.size());
}

Digest32 Sha256::finish() {
  Digest32 out;
  crypto_hash_sha256_final(&state_, out.data());
  return out;
}

}  // namespace ehrl
