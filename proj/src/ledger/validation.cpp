// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#include "ledger/validation.hpp"

namespace ehrl::ledger {

bool IdentityCache::valid_peer(const identity::StandardIdentity& id) {
  if (id.role != identity::Role::peer) return false;
  std::string key = to_string(id.to_bytes());
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  const identity::PublicKey* ca = msp_.find(id.org_name);
  bool ok = ca != nullptr && identity::verify_member(id, *ca);
  cache_.emplace(std::move(key), ok);
  return ok;
}

namespace {

bool endorsed(const Transaction& tx, const EndorsementPolicy& policy, IdentityCache& identities) {
  if (tx.tx_id != tx.compute_id()) return false;
  for (const auto& endorsement : tx.endorsements) {
    if (!policy.any_one_of.contains(endorsement.endorser.org_name)) continue;
    if (!identities.valid_peer(endorsement.endorser)) continue;
    if (identity::verify_signature(endorsement.endorser.public_key, tx.tx_id,
                                   endorsement.signature)) {
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<TxFlag> validate_block(const WorldState& state, const Block& block,
                                   const EndorsementPolicy& policy, IdentityCache& identities) {
  std::vector<TxFlag> flags(block.transactions.size(), TxFlag::valid);
  // Versions written by valid transactions earlier in this block; nullopt
  // records an in-block delete.
  std::unordered_map<std::string, std::optional<Version>> overlay;

  for (std::size_t t = 0; t < block.transactions.size(); ++t) {
    const Transaction& tx = block.transactions[t];
    if (!endorsed(tx, policy, identities)) {
      flags[t] = TxFlag::invalid_endorsement;
      continue;
    }

    bool conflict = false;
    for (const auto& read : tx.read_set) {
      std::optional<Version> current;
      if (auto it = overlay.find(read.key); it != overlay.end()) {
        current = it->second;
      } else if (const StateEntry* entry = state.get(read.key)) {
        current = entry->version;
      }
      if (current != read.version) {
        conflict = true;
        break;
      }
    }
    if (conflict) {
      flags[t] = TxFlag::invalid_mvcc;
      continue;
    }

    Version version{block.number, static_cast<std::uint32_t>(t)};
    for (const auto& write : tx.write_set) {
      overlay[write.key] = write.value ? std::optional<Version>(version) : std::nullopt;
    }
  }
  return flags;
}

}  // namespace ehrl::ledger
