// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#include "netsim/config.hpp"

#include <nlohmann/json.hpp>

namespace ehrl::netsim {

std::set<std::string> NetworkConfig::effective_policy() const {
  if (!policy_orgs.empty()) return policy_orgs;
  return std::set<std::string>(orgs.begin(), orgs.end());
}

nlohmann::json NetworkConfig::to_json() const {
  nlohmann::json j{{"orgs", orgs},
                   {"peersPerOrg", peers_per_org},
                   {"orderers", orderers},
                   {"policy", std::vector<std::string>(policy_orgs.begin(), policy_orgs.end())},
                   {"blockSize", block_size},
                   {"batchTimeout", batch_timeout},
                   {"seed", seed},
                   {"collection",
                    {{"name", collection_name},
                     {"orgs", std::vector<std::string>(collection_orgs.begin(),
                                                       collection_orgs.end())}}}};
  if (collection_lifetime_blocks) {
    j["collection"]["lifetimeBlocks"] = *collection_lifetime_blocks;
  }
  return j;
}

std::optional<NetworkConfig> NetworkConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) return std::nullopt;
  NetworkConfig cfg;
  if (j.contains("orgs")) {
    if (!j["orgs"].is_array()) return std::nullopt;
    cfg.orgs.clear();
    for (const auto& org : j["orgs"]) {
      if (!org.is_string()) return std::nullopt;
      cfg.orgs.push_back(org.get<std::string>());
    }
  }
  auto read_u32 = [&](const char* key, std::uint32_t& out) {
    if (!j.contains(key)) return true;
    if (!j[key].is_number_unsigned()) return false;
    out = j[key].get<std::uint32_t>();
    return true;
  };
  if (!read_u32("peersPerOrg", cfg.peers_per_org)) return std::nullopt;
  if (!read_u32("orderers", cfg.orderers)) return std::nullopt;
  if (!read_u32("blockSize", cfg.block_size)) return std::nullopt;
  if (!read_u32("batchTimeout", cfg.batch_timeout)) return std::nullopt;
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) return std::nullopt;
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("policy")) {
    if (!j["policy"].is_array()) return std::nullopt;
    cfg.policy_orgs.clear();
    for (const auto& org : j["policy"]) {
      if (!org.is_string()) return std::nullopt;
      cfg.policy_orgs.insert(org.get<std::string>());
    }
  }
  if (j.contains("collection")) {
    const auto& coll = j["collection"];
    if (!coll.is_object()) return std::nullopt;
    if (coll.contains("name")) {
      if (!coll["name"].is_string()) return std::nullopt;
      cfg.collection_name = coll["name"].get<std::string>();
    }
    if (coll.contains("orgs")) {
      if (!coll["orgs"].is_array()) return std::nullopt;
      cfg.collection_orgs.clear();
      for (const auto& org : coll["orgs"]) {
        if (!org.is_string()) return std::nullopt;
        cfg.collection_orgs.insert(org.get<std::string>());
      }
    }
    if (coll.contains("lifetimeBlocks")) {
      if (!coll["lifetimeBlocks"].is_number_unsigned()) return std::nullopt;
      cfg.collection_lifetime_blocks = coll["lifetimeBlocks"].get<std::uint64_t>();
    }
  }
  return cfg;
}

Result<void> NetworkConfig::validate() const {
  if (orgs.empty()) return Error{Err::invalid_argument, "at least one org required"};
  std::set<std::string> unique(orgs.begin(), orgs.end());
  if (unique.size() != orgs.size()) {
    return Error{Err::invalid_argument, "duplicate org names"};
  }
  for (const auto& org : orgs) {
    if (org.empty()) return Error{Err::invalid_argument, "org names must be nonempty"};
  }
  if (peers_per_org == 0) return Error{Err::invalid_argument, "peersPerOrg must be positive"};
  if (orderers == 0) return Error{Err::invalid_argument, "orderers must be positive"};
  if (block_size == 0) return Error{Err::invalid_argument, "blockSize must be positive"};
  if (batch_timeout == 0) return Error{Err::invalid_argument, "batchTimeout must be positive"};
  for (const auto& org : policy_orgs) {
    if (!unique.contains(org)) {
      return Error{Err::invalid_argument, "policy org " + org + " is not in the network"};
    }
  }
  if (collection_name.empty()) {
    return Error{Err::invalid_argument, "collection name must be nonempty"};
  }
  if (collection_orgs.empty()) {
    return Error{Err::invalid_argument, "collection needs at least one member org"};
  }
  for (const auto& org : collection_orgs) {
    if (!unique.contains(org)) {
      return Error{Err::invalid_argument, "collection org " + org + " is not in the network"};
    }
  }
  return {};
}

}  // namespace ehrl::netsim
