// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "core/errors.hpp"

namespace ehrl::netsim {

/// Topology and channel parameters of the simulated consortium. The
/// defaults model one health center, one hospital and one public health
/// organization with three peers each, three ordering nodes, and a private
/// collection owned by the health center.
struct NetworkConfig {
  std::vector<std::string> orgs{"Healthcenter", "Hospital", "PublicHealth"};
  std::uint32_t peers_per_org = 3;
  std::uint32_t orderers = 3;
  /// Endorsement policy: one valid peer endorsement from any listed org.
  /// Empty means every org qualifies.
  std::set<std::string> policy_orgs;
  std::uint32_t block_size = 10;     // cut a block at this many transactions
  std::uint32_t batch_timeout = 1;   // or after this many ticks, if any pending
  std::uint64_t seed = 42;
  std::string collection_name = "org1-private";
  std::set<std::string> collection_orgs{"Healthcenter"};
  std::optional<std::uint64_t> collection_lifetime_blocks;

  std::set<std::string> effective_policy() const;

  nlohmann::json to_json() const;
  static std::optional<NetworkConfig> from_json(const nlohmann::json& j);
  Result<void> validate() const;
};

}  // namespace ehrl::netsim
