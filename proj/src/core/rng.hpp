// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include "core/digest.hpp"

namespace ehrl {

/// Byte source behind every key, salt, nonce and blinding factor.
/// Injected so the whole simulation replays bit-for-bit under a seed.
class RandomSource {
 public:
  virtual ~RandomSource() = default;
  virtual void fill(std::span<std::uint8_t> out) = 0;

  std::uint64_t next_u64();
  /// Unbiased uniform draw in [0, bound).
  std::uint64_t below(std::uint64_t bound);
};

/// SHA-256 counter DRBG. Not for production keys; its job here is
/// reproducibility of workloads and network state across runs.
class DeterministicRng final : public RandomSource {
 public:
  explicit DeterministicRng(std::uint64_t seed);
  explicit DeterministicRng(const Digest32& seed) : seed_(seed) {}

  void fill(std::span<std::uint8_t> out) override;

  /// Independent child stream. Draws from the child never affect the
  /// parent or sibling streams.
  DeterministicRng fork(std::string_view label) const;

 private:
  Digest32 seed_{};
  std::uint64_t counter_ = 0;
};

/// OS randomness (libsodium randombytes).
class SystemRng final : public RandomSource {
 public:
  void fill(std::span<std::uint8_t> out) override;
};

}  // namespace ehrl
