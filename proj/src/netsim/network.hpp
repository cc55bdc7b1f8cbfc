// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "chaincode/ehr.hpp"
#include "identity/anoncred.hpp"
#include "identity/msp.hpp"
#include "ledger/chain.hpp"
#include "ledger/private_store.hpp"
#include "ledger/state.hpp"
#include "ledger/validation.hpp"
#include "netsim/config.hpp"
#include "netsim/ordering.hpp"

namespace ehrl::netsim {

/// One simulated peer: its own copy of the chain, world state, identity
/// cache, and, for collection members, the private side database.
struct Peer {
  std::string org;
  std::string name;
  bool collection_member = false;
  identity::Enrollment enrollment;
  ledger::LedgerChain chain;
  ledger::WorldState state;
  ledger::PrivateStore private_store;
  std::unique_ptr<ledger::IdentityCache> identities;
};

/// Result of one client operation end to end. Write operations carry the
/// commit outcome; reads answer at endorsement time.
struct OpOutcome {
  std::string op;
  bool ok = false;
  Err error_code = Err::none;
  std::string error;
  nlohmann::json response;
  std::optional<Digest32> tx_id;
  std::optional<ledger::TxFlag> flag;
  std::uint64_t block_number = 0;
  double latency_ms = 0.0;
};

/// In-process consortium: organizations with CAs, peers, a replicated
/// ordering service, registered clients, and the health-record chaincode.
/// All randomness flows from the config seed, so two networks built from
/// the same config and fed the same operations match byte for byte.
class Network {
 public:
  static Result<std::unique_ptr<Network>> create(const NetworkConfig& config);

  Network(const Network&) = delete;
  Network& operator=(const Network&) = delete;

  /// Enrolls a standard identity and issues the matching anonymous
  /// credential. Clients registered in the same order are identical across
  /// runs.
  Result<void> register_client(const std::string& name, const std::string& org);
  bool has_client(const std::string& name) const { return clients_.contains(name); }

  /// One synchronous operation: endorse, order, wait for commit (writes)
  /// or answer directly (reads). The special client name "anon" uses the
  /// default anonymous credential; any registered client can also act
  /// anonymously via the flag.
  OpOutcome execute_op(const std::string& client, const std::string& op,
                       const nlohmann::json& args, bool anonymous = false);

  /// Script entries: {"op", "client", "args"}. Write operations are
  /// submitted asynchronously with one ordering tick per entry, so batch
  /// settings shape the blocks; everything still pending is flushed at the
  /// end. force_anonymous runs every entry anonymously.
  Result<std::vector<OpOutcome>> run_script(const nlohmann::json& script, bool force_anonymous);

  void tick();
  void flush();

  const NetworkConfig& config() const { return config_; }
  std::size_t peer_count() const { return peers_.size(); }
  const Peer& peer_at(std::size_t index) const { return *peers_.at(index); }
  const OrderingService& ordering() const { return *ordering_; }
  const identity::IssuerPublic& issuer_public() const { return issuer_.pub; }

  std::uint64_t blocks_committed() const { return blocks_committed_; }
  std::uint64_t txs_committed() const { return txs_committed_; }
  std::uint64_t txs_valid() const { return txs_valid_; }

  /// Chain audit on every peer plus cross-peer and cross-orderer
  /// consistency.
  Result<void> verify() const;
  std::string snapshot(std::size_t peer_index) const;
  Bytes export_chain() const;

  /// Validate and commit blocks on all peers concurrently instead of in a
  /// loop. State outcomes are identical either way.
  void set_parallel_delivery(bool on) { parallel_delivery_ = on; }

 private:
  Network() = default;

  struct ClientRecord {
    identity::Enrollment enrollment;
    identity::AnonCredential credential;
  };

  struct Pending {
    std::chrono::steady_clock::time_point start;
    std::vector<chaincode::PrivateDelta> deltas;
  };

  struct Receipt {
    ledger::TxFlag flag;
    std::uint64_t block_number;
    double latency_ms;
  };

  struct Prepared {
    nlohmann::json public_arg;
    chaincode::TransientMap transient;
  };

  static bool is_write_op(const std::string& op);
  Result<void> ensure_client(const std::string& name);
  Result<Prepared> prepare_args(const std::string& op, const nlohmann::json& args);
  Peer& route(const std::string& op, bool touches_collection);
  Result<ledger::Creator> make_creator(const ClientRecord& client, bool anonymous,
                                       Peer& endorser, chaincode::CallerContext& ctx);

  struct Endorsed {
    ledger::Transaction tx;
    nlohmann::json response;
    std::vector<chaincode::PrivateDelta> deltas;
  };
  Result<Endorsed> endorse(const std::string& client_name, const std::string& op,
                           const nlohmann::json& args, bool anonymous);

  void deliver(const std::vector<std::shared_ptr<const ledger::Block>>& blocks);
  void commit_on_peer(Peer& peer, const std::shared_ptr<const ledger::Block>& block);
  OpOutcome finish_write(OpOutcome outcome, const Digest32& tx_id);

  NetworkConfig config_;
  identity::Msp msp_;
  std::map<std::string, identity::OrgCA> cas_;
  std::vector<std::unique_ptr<Peer>> peers_;
  std::vector<std::size_t> member_peer_indices_;
  std::unique_ptr<OrderingService> ordering_;
  ledger::EndorsementPolicy policy_;
  ledger::CollectionPolicy collection_;
  identity::IssuerKey issuer_;
  std::map<std::string, ClientRecord> clients_;
  std::string default_anon_client_;

  DeterministicRng root_rng_{0};
  std::unique_ptr<DeterministicRng> key_rng_;
  std::unique_ptr<DeterministicRng> tx_nonce_rng_;
  std::unique_ptr<DeterministicRng> salt_rng_;
  std::unique_ptr<DeterministicRng> presentation_rng_;
  std::unique_ptr<DeterministicRng> verifier_nonce_rng_;

  std::map<Digest32, Pending> pending_;
  std::map<Digest32, Receipt> receipts_;
  std::size_t rr_all_ = 0;
  std::size_t rr_members_ = 0;
  std::uint64_t blocks_committed_ = 0;
  std::uint64_t txs_committed_ = 0;
  std::uint64_t txs_valid_ = 0;
  bool parallel_delivery_ = false;
};

}  // namespace ehrl::netsim
