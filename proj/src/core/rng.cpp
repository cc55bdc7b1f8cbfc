// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#include "core/rng.hpp"

#include <algorithm>
#include <cstring>

#include "core/bytes.hpp"
#include "core/suite.hpp"

namespace ehrl {

std::uint64_t RandomSource::next_u64() {
  std::uint8_t buf[8];
  fill(buf);
  std::uint64_t v = 0;
  for (std::uint8_t b : buf) v = (v << 8) | b;
  return v;
}

std::uint64_t RandomSource::below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  // Rejection sampling over the top of the range to stay unbiased.
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  std::uint64_t v;
  do {
    v = next_u64();
  } while (v >= limit);
  return v % bound;
}

DeterministicRng::DeterministicRng(std::uint64_t seed) {
  Encoder enc;
  enc.str(suite::kTagRngFork);
  enc.u64(seed);
  seed_ = sha256(enc.view());
}

void DeterministicRng::fill(std::span<std::uint8_t> out) {
  std::size_t pos = 0;
  while (pos < out.size()) {
    Sha256 h;
    h.update(seed_);
    std::uint8_t ctr[8];
    for (int i = 7; i >= 0; --i) ctr[7 - i] = static_cast<std::uint8_t>(counter_ >> (i * 8));
    h.update(ctr);
    ++counter_;
    Digest32 block = h.finish();
    const std::size_t n = std::min(block.size(), out.size() - pos);
    std::memcpy(out.data() + pos, block.data(), n);
    pos += n;
  }
}

DeterministicRng DeterministicRng::fork(std::string_view label) const {
  Sha256 h;
  h.update(seed_);
  h.update_str(suite::kTagRngFork);
  h.update_str(label);
  return DeterministicRng(h.finish());
}

void SystemRng::fill(std::span<std::uint8_t> out) {
  ensure_crypto_init();
  randombytes_buf(out.data(), out.size());
}

}  // namespace ehrl
