// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#pragma once

#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "identity/msp.hpp"
#include "ledger/state.hpp"
#include "ledger/types.hpp"

namespace ehrl::ledger {

/// One valid peer endorsement from any listed organization suffices.
struct EndorsementPolicy {
  std::set<std::string> any_one_of;
};

/// Memoized certificate verification. Endorsing peers recur constantly, so
/// each validator checks a given certificate once.
class IdentityCache {
 public:
  explicit IdentityCache(const identity::Msp& msp) : msp_(msp) {}
  /// True iff the identity is a peer certificate valid under its org's CA.
  bool valid_peer(const identity::StandardIdentity& id);

 private:
  const identity::Msp& msp_;
  std::unordered_map<std::string, bool> cache_;
};

/// Deterministic commit-time validation of an ordered block against the
/// state as of its predecessor. Endorsement policy first, then
/// multi-version read checks; valid transactions within the block take
/// effect in order, so later reads of keys written earlier in the same
/// block conflict.
std::vector<TxFlag> validate_block(const WorldState& state, const Block& block,
                                   const EndorsementPolicy& policy, IdentityCache& identities);

}  // namespace ehrl::ledger
