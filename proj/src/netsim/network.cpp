// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#include "netsim/network.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace ehrl::netsim {

using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Bytes draw(RandomSource& rng, std::size_t n) {
  Bytes out(n);
  rng.fill(out);
  return out;
}

}  // namespace

Result<std::unique_ptr<Network>> Network::create(const NetworkConfig& config) {
  auto valid = config.validate();
  if (!valid.ok()) return valid.error();

  std::unique_ptr<Network> net(new Network());
  net->config_ = config;
  net->root_rng_ = DeterministicRng(config.seed);
  net->key_rng_ = std::make_unique<DeterministicRng>(net->root_rng_.fork("keys"));
  net->tx_nonce_rng_ = std::make_unique<DeterministicRng>(net->root_rng_.fork("tx-nonces"));
  net->salt_rng_ = std::make_unique<DeterministicRng>(net->root_rng_.fork("salts"));
  net->presentation_rng_ =
      std::make_unique<DeterministicRng>(net->root_rng_.fork("presentations"));
  net->verifier_nonce_rng_ =
      std::make_unique<DeterministicRng>(net->root_rng_.fork("verifier-nonces"));

  for (const auto& org : config.orgs) {
    auto ca = identity::OrgCA::create(org, *net->key_rng_);
    if (!ca.ok()) return ca.error();
    net->msp_.org_ca_keys[org] = ca->public_key();
    net->cas_.emplace(org, std::move(ca.value()));
  }

  for (const auto& org : config.orgs) {
    const auto& ca = net->cas_.at(org);
    for (std::uint32_t i = 0; i < config.peers_per_org; ++i) {
      auto enrollment = ca.enroll("peer" + std::to_string(i) + "." + org, identity::Role::peer,
                                  *net->key_rng_);
      if (!enrollment.ok()) return enrollment.error();
      auto peer = std::make_unique<Peer>();
      peer->org = org;
      peer->name = enrollment->identity.subject;
      peer->collection_member = config.collection_orgs.contains(org);
      peer->enrollment = std::move(enrollment.value());
      peer->identities = std::make_unique<ledger::IdentityCache>(net->msp_);
      if (peer->collection_member) net->member_peer_indices_.push_back(net->peers_.size());
      net->peers_.push_back(std::move(peer));
    }
  }

  ledger::Block genesis;
  genesis.data_hash = genesis.compute_data_hash();
  auto shared_genesis = std::make_shared<const ledger::Block>(std::move(genesis));
  for (auto& peer : net->peers_) {
    auto appended = peer->chain.append(shared_genesis);
    if (!appended.ok()) return appended.error();
    peer->state.apply_block(*shared_genesis);
  }
  net->ordering_ = std::make_unique<OrderingService>(
      config.block_size, config.batch_timeout, config.orderers, hash_block(*shared_genesis));

  net->policy_.any_one_of = config.effective_policy();
  net->collection_ = ledger::CollectionPolicy{config.collection_name, config.collection_orgs,
                                              config.collection_lifetime_blocks};

  DeterministicRng issuer_rng = net->root_rng_.fork("issuer");
  auto issuer = identity::issuer_setup(4, issuer_rng);
  if (!issuer.ok()) return issuer.error();
  net->issuer_ = std::move(issuer.value());

  std::string anon_org = *config.collection_orgs.begin();
  net->default_anon_client_ = "anon-default@" + anon_org;
  auto registered = net->register_client(net->default_anon_client_, anon_org);
  if (!registered.ok()) return registered.error();
  return net;
}

Result<void> Network::register_client(const std::string& name, const std::string& org) {
  if (clients_.contains(name)) return Error{Err::duplicate, "client " + name + " exists"};
  auto ca = cas_.find(org);
  if (ca == cas_.end()) return Error{Err::not_found, "org " + org + " is not in the network"};
  auto enrollment = ca->second.enroll(name, identity::Role::client, *key_rng_);
  if (!enrollment.ok()) return enrollment.error();
  auto credential = identity::issue_credential(
      issuer_, {org, "client", "enroll-" + name, "member"}, *key_rng_);
  if (!credential.ok()) return credential.error();
  clients_.emplace(name,
                   ClientRecord{std::move(enrollment.value()), std::move(credential.value())});
  return {};
}

bool Network::is_write_op(const std::string& op) {
  return op == "create" || op == "update" || op == "delete";
}

Result<void> Network::ensure_client(const std::string& name) {
  if (clients_.contains(name)) return {};
  // First sight of a client enrolls it; a "name@Org" suffix picks the org.
  std::string org = config_.orgs.front();
  if (auto at = name.find('@'); at != std::string::npos) {
    std::string suffix = name.substr(at + 1);
    if (std::find(config_.orgs.begin(), config_.orgs.end(), suffix) != config_.orgs.end()) {
      org = suffix;
    }
  }
  return register_client(name, org);
}

Result<Network::Prepared> Network::prepare_args(const std::string& op,
                                                const nlohmann::json& args) {
  if (!args.is_object()) return Error{Err::invalid_argument, "args must be a JSON object"};
  auto str_field = [&](const char* key) -> std::optional<std::string> {
    if (!args.contains(key) || !args[key].is_string()) return std::nullopt;
    return args[key].get<std::string>();
  };

  Prepared prepared;
  auto id = str_field("id");
  if (!id || id->empty()) return Error{Err::invalid_argument, "missing record id"};
  prepared.public_arg = {{"id", *id}};

  bool wants_private = false;
  if (op == "create" || op == "update") {
    auto name = str_field("name");
    auto address = str_field("address");
    if (args.contains("name") != args.contains("address")) {
      return Error{Err::invalid_argument, "name and address go together"};
    }
    if (name && address) {
      wants_private = true;
      prepared.transient["name"] = *name;
      prepared.transient["address"] = *address;
      prepared.transient["salt"] = to_hex(draw(*salt_rng_, 16));
    }
  }
  if (op == "create") {
    for (const char* key : {"country", "dateOfBirth", "test"}) {
      auto value = str_field(key);
      if (!value) return Error{Err::invalid_argument, std::string("missing field ") + key};
      prepared.public_arg[key] = *value;
    }
  } else if (op == "update") {
    bool any = wants_private;
    for (const char* key : {"country", "dateOfBirth", "test"}) {
      if (!args.contains(key)) continue;
      if (!args[key].is_string()) {
        return Error{Err::invalid_argument, std::string("field ") + key + " must be a string"};
      }
      prepared.public_arg[key] = args[key].get<std::string>();
      any = true;
    }
    if (!any) return Error{Err::invalid_argument, "update changes nothing"};
  }
  return prepared;
}

Peer& Network::route(const std::string& op, bool touches_collection) {
  (void)op;
  if (touches_collection && !member_peer_indices_.empty()) {
    std::size_t index = member_peer_indices_[rr_members_ % member_peer_indices_.size()];
    ++rr_members_;
    return *peers_[index];
  }
  Peer& peer = *peers_[rr_all_ % peers_.size()];
  ++rr_all_;
  return peer;
}

Result<ledger::Creator> Network::make_creator(const ClientRecord& client, bool anonymous,
                                              Peer& endorser, chaincode::CallerContext& ctx) {
  (void)endorser;
  if (!anonymous) {
    const identity::PublicKey* ca = msp_.find(client.enrollment.identity.org_name);
    if (ca == nullptr || !identity::verify_member(client.enrollment.identity, *ca) ||
        client.enrollment.identity.role != identity::Role::client) {
      return Error{Err::auth_failed, "client certificate does not verify"};
    }
    ctx = chaincode::CallerContext{client.enrollment.identity.org_name, false};
    return ledger::Creator{client.enrollment.identity};
  }

  // The endorsing peer challenges with a fresh nonce; the client answers
  // with a showing that reveals only the organization attribute.
  Bytes nonce = draw(*verifier_nonce_rng_, 16);
  auto presentation = identity::present(client.credential, {0}, nonce, *presentation_rng_);
  if (!presentation.ok()) return presentation.error();
  auto revealed = identity::verify_presentation(*presentation, issuer_.pub, nonce);
  if (!revealed.ok()) return revealed.error();
  auto org = revealed->find(0);
  if (org == revealed->end() || msp_.find(org->second) == nullptr) {
    return Error{Err::auth_failed, "credential does not reveal a known organization"};
  }
  ctx = chaincode::CallerContext{org->second, true};
  return ledger::Creator{std::move(*presentation)};
}

Result<Network::Endorsed> Network::endorse(const std::string& client_name, const std::string& op,
                                           const nlohmann::json& args, bool anonymous) {
  auto client = clients_.find(client_name);
  if (client == clients_.end()) {
    return Error{Err::not_found, "unknown client " + client_name};
  }
  auto prepared = prepare_args(op, args);
  if (!prepared.ok()) return prepared.error();

  bool touches_collection =
      !prepared->transient.empty() || op == "read-private" || op == "delete";
  Peer& endorser = route(op, touches_collection);

  chaincode::CallerContext ctx;
  auto creator = make_creator(client->second, anonymous, endorser, ctx);
  if (!creator.ok()) return creator.error();

  ledger::Invocation invocation{op, {prepared->public_arg.dump()}};
  chaincode::ChaincodeView view{&endorser.state,
                                endorser.collection_member ? &endorser.private_store : nullptr,
                                collection_};
  auto proposal = chaincode::execute(ctx, view, invocation, prepared->transient);
  if (!proposal.ok()) return proposal.error();

  Endorsed endorsed;
  endorsed.tx.invocation = std::move(invocation);
  endorsed.tx.nonce = draw(*tx_nonce_rng_, 16);
  endorsed.tx.read_set = std::move(proposal->read_set);
  endorsed.tx.write_set = std::move(proposal->write_set);
  endorsed.tx.private_writes = std::move(proposal->private_writes);
  endorsed.tx.creator = std::move(creator.value());
  endorsed.tx.tx_id = endorsed.tx.compute_id();
  endorsed.tx.endorsements.push_back(
      {endorser.enrollment.identity, endorser.enrollment.key.sign(endorsed.tx.tx_id)});
  endorsed.response = std::move(proposal->response);
  endorsed.deltas = std::move(proposal->private_payloads);
  return endorsed;
}

OpOutcome Network::execute_op(const std::string& client, const std::string& op,
                              const nlohmann::json& args, bool anonymous) {
  auto start = Clock::now();
  OpOutcome outcome;
  outcome.op = op;

  std::string client_name = client;
  if (client_name == "anon") {
    client_name = default_anon_client_;
    anonymous = true;
  }
  if (auto registered = ensure_client(client_name); !registered.ok()) {
    outcome.error_code = registered.error().code;
    outcome.error = registered.error().message;
    return outcome;
  }

  if (op != "create" && op != "read" && op != "read-private" && op != "update" &&
      op != "delete") {
    outcome.error_code = Err::invalid_argument;
    outcome.error = "unknown op " + op;
    return outcome;
  }

  auto endorsed = endorse(client_name, op, args, anonymous);
  if (!endorsed.ok()) {
    outcome.error_code = endorsed.error().code;
    outcome.error = endorsed.error().message;
    outcome.latency_ms = ms_since(start);
    return outcome;
  }
  outcome.response = endorsed->response;

  if (!is_write_op(op)) {
    outcome.ok = true;
    outcome.latency_ms = ms_since(start);
    return outcome;
  }

  Digest32 tx_id = endorsed->tx.tx_id;
  pending_.emplace(tx_id, Pending{start, std::move(endorsed->deltas)});
  ordering_->submit(std::move(endorsed->tx));
  for (std::uint32_t i = 0; i <= config_.batch_timeout + 1 && !receipts_.contains(tx_id); ++i) {
    tick();
  }
  return finish_write(std::move(outcome), tx_id);
}

OpOutcome Network::finish_write(OpOutcome outcome, const Digest32& tx_id) {
  outcome.tx_id = tx_id;
  auto receipt = receipts_.find(tx_id);
  if (receipt == receipts_.end()) {
    outcome.error_code = Err::internal;
    outcome.error = "transaction never committed";
    return outcome;
  }
  outcome.flag = receipt->second.flag;
  outcome.block_number = receipt->second.block_number;
  outcome.latency_ms = receipt->second.latency_ms;
  if (receipt->second.flag == ledger::TxFlag::valid) {
    outcome.ok = true;
  } else {
    outcome.error_code = receipt->second.flag == ledger::TxFlag::invalid_mvcc
                             ? Err::conflict
                             : Err::auth_failed;
    outcome.error = std::string("transaction invalidated: ") +
                    ledger::flag_name(receipt->second.flag);
  }
  return outcome;
}

Result<std::vector<OpOutcome>> Network::run_script(const nlohmann::json& script,
                                                   bool force_anonymous) {
  if (!script.is_array()) return Error{Err::invalid_argument, "script must be a JSON array"};
  std::vector<OpOutcome> outcomes;
  outcomes.reserve(script.size());
  std::map<Digest32, std::size_t> awaiting;

  for (const auto& entry : script) {
    if (!entry.is_object() || !entry.contains("op") || !entry["op"].is_string()) {
      return Error{Err::invalid_argument, "script entries need an op"};
    }
    std::string op = entry["op"].get<std::string>();
    std::string client = entry.value("client", std::string("anon"));
    nlohmann::json args = entry.value("args", nlohmann::json::object());
    bool anonymous = force_anonymous || client == "anon";

    if (!is_write_op(op)) {
      outcomes.push_back(execute_op(client, op, args, anonymous));
      continue;
    }

    // Writes are pipelined: endorse and submit now, commit whenever the
    // ordering service cuts the batch.
    auto start = Clock::now();
    OpOutcome outcome;
    outcome.op = op;
    std::string client_name = client == "anon" ? default_anon_client_ : client;
    if (client == "anon") anonymous = true;
    if (auto registered = ensure_client(client_name); !registered.ok()) {
      outcome.error_code = registered.error().code;
      outcome.error = registered.error().message;
      outcomes.push_back(std::move(outcome));
      continue;
    }
    auto endorsed = endorse(client_name, op, args, anonymous);
    if (!endorsed.ok()) {
      outcome.error_code = endorsed.error().code;
      outcome.error = endorsed.error().message;
      outcome.latency_ms = ms_since(start);
      outcomes.push_back(std::move(outcome));
      continue;
    }
    outcome.response = endorsed->response;
    Digest32 tx_id = endorsed->tx.tx_id;
    pending_.emplace(tx_id, Pending{start, std::move(endorsed->deltas)});
    ordering_->submit(std::move(endorsed->tx));
    awaiting.emplace(tx_id, outcomes.size());
    outcomes.push_back(std::move(outcome));
    tick();
  }

  flush();
  for (const auto& [tx_id, index] : awaiting) {
    outcomes[index] = finish_write(std::move(outcomes[index]), tx_id);
  }
  return outcomes;
}

void Network::tick() {
  deliver(ordering_->tick());
}

void Network::flush() {
  deliver(ordering_->flush());
}

void Network::commit_on_peer(Peer& peer, const std::shared_ptr<const ledger::Block>& block) {
  auto appended = peer.chain.append(block);
  if (!appended.ok()) {
    throw std::logic_error("peer " + peer.name + " rejected a delivered block: " +
                           appended.error().message);
  }
  peer.state.apply_block(*block);
}

void Network::deliver(const std::vector<std::shared_ptr<const ledger::Block>>& blocks) {
  for (const auto& raw : blocks) {
    std::vector<std::vector<ledger::TxFlag>> verdicts(peers_.size());
    auto validate_one = [&](std::size_t i) {
      verdicts[i] = ledger::validate_block(peers_[i]->state, *raw, policy_,
                                           *peers_[i]->identities);
    };
    if (parallel_delivery_) {
      std::vector<std::thread> workers;
      workers.reserve(peers_.size());
      for (std::size_t i = 0; i < peers_.size(); ++i) workers.emplace_back(validate_one, i);
      for (auto& worker : workers) worker.join();
    } else {
      for (std::size_t i = 0; i < peers_.size(); ++i) validate_one(i);
    }
    for (std::size_t i = 1; i < verdicts.size(); ++i) {
      if (verdicts[i] != verdicts[0]) {
        throw std::logic_error("validation diverged between peers");
      }
    }

    ledger::Block finalized = *raw;
    finalized.validation_flags = verdicts[0];
    auto block = std::make_shared<const ledger::Block>(std::move(finalized));

    if (parallel_delivery_) {
      std::vector<std::thread> workers;
      workers.reserve(peers_.size());
      for (auto& peer : peers_) {
        Peer* target = peer.get();
        workers.emplace_back([this, target, block] { commit_on_peer(*target, block); });
      }
      for (auto& worker : workers) worker.join();
    } else {
      for (auto& peer : peers_) commit_on_peer(*peer, block);
    }

    for (std::size_t t = 0; t < block->transactions.size(); ++t) {
      const auto& tx = block->transactions[t];
      auto pending = pending_.find(tx.tx_id);
      bool valid = block->validation_flags[t] == ledger::TxFlag::valid;
      if (valid) ++txs_valid_;
      if (pending != pending_.end()) {
        if (valid) {
          ledger::Version version{block->number, static_cast<std::uint32_t>(t)};
          for (const auto& delta : pending->second.deltas) {
            for (std::size_t index : member_peer_indices_) {
              auto& store = peers_[index]->private_store;
              if (delta.op == ledger::PrivateOp::write) {
                store.put(delta.collection, delta.key, delta.plaintext, delta.salt, version);
              } else {
                store.purge(delta.collection, delta.key);
              }
            }
          }
        }
        receipts_[tx.tx_id] = Receipt{block->validation_flags[t], block->number,
                                      ms_since(pending->second.start)};
        pending_.erase(pending);
      } else {
        receipts_[tx.tx_id] = Receipt{block->validation_flags[t], block->number, 0.0};
      }
    }
    txs_committed_ += block->transactions.size();
    ++blocks_committed_;

    if (collection_.lifetime_blocks) {
      for (std::size_t index : member_peer_indices_) {
        peers_[index]->private_store.sweep_expired(collection_, block->number);
      }
    }
  }
}

Result<void> Network::verify() const {
  if (peers_.empty()) return Error{Err::internal, "no peers"};
  const Peer& reference = *peers_.front();
  for (const auto& peer : peers_) {
    auto audit = peer->chain.verify();
    if (!audit.ok()) {
      return Error{audit.error().code, peer->name + ": " + audit.error().message};
    }
    if (peer->chain.height() != reference.chain.height()) {
      return Error{Err::conflict, peer->name + ": chain height diverges"};
    }
    if (peer->chain.tip_hash() != reference.chain.tip_hash()) {
      return Error{Err::conflict, peer->name + ": chain tip diverges"};
    }
    if (peer->state.snapshot_json() != reference.state.snapshot_json()) {
      return Error{Err::conflict, peer->name + ": world state diverges"};
    }
  }
  for (std::size_t node = 1; node < ordering_->node_count(); ++node) {
    if (ordering_->node_log_digest(node) != ordering_->node_log_digest(0)) {
      return Error{Err::conflict, "ordering node logs diverge"};
    }
  }
  return {};
}

std::string Network::snapshot(std::size_t peer_index) const {
  return peers_.at(peer_index)->state.snapshot_json();
}

Bytes Network::export_chain() const {
  return peers_.front()->chain.export_bytes();
}

}  // namespace ehrl::netsim
