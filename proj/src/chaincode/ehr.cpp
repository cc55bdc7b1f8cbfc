// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#include "chaincode/ehr.hpp"

namespace ehrl::chaincode {

using ledger::PrivateOp;
using ledger::ReadItem;
using ledger::Version;
using ledger::WriteItem;

nlohmann::json EHRRecord::to_json() const {
  return {{"id", id},          {"name", name},
          {"address", address}, {"country", country},
          {"dateOfBirth", dateOfBirth}, {"test", test}};
}

std::optional<EHRRecord> EHRRecord::from_json(const nlohmann::json& j) {
  if (!j.is_object()) return std::nullopt;
  EHRRecord record;
  for (auto [key, out] : {std::pair{"id", &record.id}, {"name", &record.name},
                          {"address", &record.address}, {"country", &record.country},
                          {"dateOfBirth", &record.dateOfBirth}, {"test", &record.test}}) {
    if (!j.contains(key) || !j[key].is_string()) return std::nullopt;
    *out = j[key].get<std::string>();
  }
  if (record.id.empty()) return std::nullopt;
  return record;
}

std::string record_key(const std::string& id) {
  return "rec/" + id;
}

nlohmann::json PublicRecordView::to_json() const {
  if (deleted) return {{"id", id}, {"deleted", true}};
  return {{"id", id}, {"country", country}, {"dateOfBirth", dateOfBirth}, {"test", test}};
}

std::optional<PublicRecordView> PublicRecordView::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("id") || !j["id"].is_string()) return std::nullopt;
  PublicRecordView view;
  view.id = j["id"].get<std::string>();
  if (j.contains("deleted")) {
    if (!j["deleted"].is_boolean() || !j["deleted"].get<bool>()) return std::nullopt;
    view.deleted = true;
    return view;
  }
  for (auto [key, out] : {std::pair{"country", &view.country},
                          {"dateOfBirth", &view.dateOfBirth}, {"test", &view.test}}) {
    if (!j.contains(key) || !j[key].is_string()) return std::nullopt;
    *out = j[key].get<std::string>();
  }
  return view;
}

Bytes PublicRecordView::encode() const {
  return to_bytes(to_json().dump());
}

std::optional<PublicRecordView> PublicRecordView::decode(ByteSpan data) {
  auto j = nlohmann::json::parse(to_string(data), nullptr, false);
  if (j.is_discarded()) return std::nullopt;
  return from_json(j);
}

Bytes encode_private_pair(const std::string& name, const std::string& address) {
  Encoder enc;
  enc.str(name);
  enc.str(address);
  return enc.take();
}

std::optional<std::pair<std::string, std::string>> decode_private_pair(ByteSpan data) {
  Decoder dec(data);
  std::string name, address;
  if (!dec.str(name) || !dec.str(address) || !dec.done()) return std::nullopt;
  return std::pair{std::move(name), std::move(address)};
}

namespace {

Result<nlohmann::json> parse_single_arg(const ledger::Invocation& invocation) {
  if (invocation.args.size() != 1) {
    return Error{Err::invalid_argument, invocation.function + " takes exactly one argument"};
  }
  auto j = nlohmann::json::parse(invocation.args[0], nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    return Error{Err::invalid_argument, "argument must be a JSON object"};
  }
  return j;
}

Result<std::string> required_id(const nlohmann::json& j) {
  if (!j.contains("id") || !j["id"].is_string() || j["id"].get<std::string>().empty()) {
    return Error{Err::invalid_argument, "missing record id"};
  }
  return j["id"].get<std::string>();
}

struct Found {
  std::optional<Version> version;
  std::optional<PublicRecordView> view;  // set iff the key holds a record
};

/// Reads the record key and remembers the observed version in the read set.
Result<Found> fetch(const ChaincodeView& view, Proposal& proposal, const std::string& key) {
  Found found;
  if (const ledger::StateEntry* entry = view.state->get(key)) {
    found.version = entry->version;
    auto parsed = PublicRecordView::decode(entry->value);
    if (!parsed) return Error{Err::internal, "state holds an undecodable record"};
    found.view = std::move(*parsed);
  }
  proposal.read_set.push_back(ReadItem{key, found.version});
  return found;
}

/// Transient material for a private write: name, address, hex salt. All
/// three or none.
Result<std::optional<PrivateDelta>> private_delta_from_transient(const ChaincodeView& view,
                                                                 const std::string& key,
                                                                 const TransientMap& transient) {
  bool has_name = transient.contains("name");
  bool has_address = transient.contains("address");
  bool has_salt = transient.contains("salt");
  if (!has_name && !has_address && !has_salt) return std::optional<PrivateDelta>{};
  if (!has_name || !has_address || !has_salt) {
    return Error{Err::invalid_argument, "private payload needs name, address and salt"};
  }
  auto salt = from_hex(transient.at("salt"));
  if (!salt || salt->empty()) {
    return Error{Err::invalid_argument, "salt must be nonempty hex"};
  }
  PrivateDelta delta;
  delta.collection = view.collection.name;
  delta.key = key;
  delta.op = PrivateOp::write;
  delta.plaintext = encode_private_pair(transient.at("name"), transient.at("address"));
  delta.salt = std::move(*salt);
  return std::optional(std::move(delta));
}

void append_private_write(Proposal& proposal, PrivateDelta delta) {
  proposal.private_writes.push_back(ledger::PrivateWrite{
      delta.collection, delta.key, delta.op,
      delta.op == PrivateOp::write ? ledger::private_anchor(delta.salt, delta.plaintext)
                                   : kZeroDigest});
  proposal.private_payloads.push_back(std::move(delta));
}

Result<Proposal> do_create(const ChaincodeView& view, const nlohmann::json& arg,
                           const TransientMap& transient) {
  Proposal proposal;
  auto id = required_id(arg);
  if (!id.ok()) return id.error();
  std::string key = record_key(*id);

  auto found = fetch(view, proposal, key);
  if (!found.ok()) return found.error();
  if (found->view && !found->view->deleted) {
    return Error{Err::duplicate, "record " + *id + " already exists"};
  }

  PublicRecordView record;
  record.id = *id;
  for (auto [name, out] : {std::pair{"country", &record.country},
                           {"dateOfBirth", &record.dateOfBirth}, {"test", &record.test}}) {
    if (!arg.contains(name) || !arg[name].is_string()) {
      return Error{Err::invalid_argument, std::string("missing field ") + name};
    }
    *out = arg[name].get<std::string>();
  }
  proposal.write_set.push_back(WriteItem{key, record.encode()});

  auto delta = private_delta_from_transient(view, key, transient);
  if (!delta.ok()) return delta.error();
  if (delta->has_value()) append_private_write(proposal, std::move(**delta));

  proposal.response = {{"id", *id}};
  return proposal;
}

Result<Proposal> do_read(const ChaincodeView& view, const nlohmann::json& arg) {
  Proposal proposal;
  auto id = required_id(arg);
  if (!id.ok()) return id.error();
  std::string key = record_key(*id);

  auto found = fetch(view, proposal, key);
  if (!found.ok()) return found.error();
  if (!found->view || found->view->deleted) {
    return Error{Err::not_found, "record " + *id + " does not exist"};
  }

  const ledger::AnchorEntry* anchor = view.state->get_anchor(view.collection.name, key);
  proposal.response = found->view->to_json();
  proposal.response["privateDataAvailable"] = anchor != nullptr && !anchor->purged;
  return proposal;
}

Result<Proposal> do_read_private(const CallerContext& ctx, const ChaincodeView& view,
                                 const nlohmann::json& arg) {
  if (!view.collection.is_member(ctx.org_name)) {
    return Error{Err::access_denied,
                 "org " + ctx.org_name + " is not a member of " + view.collection.name};
  }
  Proposal proposal;
  auto id = required_id(arg);
  if (!id.ok()) return id.error();
  std::string key = record_key(*id);

  // A purged anchor wins over the tombstone: erasure must be reported as
  // such, not disguised as a record that never existed.
  const ledger::AnchorEntry* anchor = view.state->get_anchor(view.collection.name, key);
  if (anchor != nullptr && anchor->purged) {
    return Error{Err::purged, "private data for " + *id + " was purged"};
  }

  auto found = fetch(view, proposal, key);
  if (!found.ok()) return found.error();
  if (!found->view || found->view->deleted) {
    return Error{Err::not_found, "record " + *id + " does not exist"};
  }

  if (anchor == nullptr) {
    return Error{Err::not_found, "record " + *id + " has no private data"};
  }
  const ledger::PrivateStore::Entry* entry =
      view.private_store ? view.private_store->get(view.collection.name, key) : nullptr;
  if (entry == nullptr) {
    return Error{Err::not_found, "plaintext for " + *id + " is not held by this peer"};
  }
  if (!ledger::verify_private_anchor(anchor->anchor, entry->salt, entry->plaintext)) {
    return Error{Err::internal, "plaintext does not match the on-chain anchor"};
  }
  auto pair = decode_private_pair(entry->plaintext);
  if (!pair) return Error{Err::internal, "stored plaintext is undecodable"};
  proposal.response = {{"id", *id}, {"name", pair->first}, {"address", pair->second}};
  return proposal;
}

Result<Proposal> do_update(const ChaincodeView& view, const nlohmann::json& arg,
                           const TransientMap& transient) {
  Proposal proposal;
  auto id = required_id(arg);
  if (!id.ok()) return id.error();
  std::string key = record_key(*id);

  auto found = fetch(view, proposal, key);
  if (!found.ok()) return found.error();
  if (!found->view || found->view->deleted) {
    return Error{Err::not_found, "record " + *id + " does not exist"};
  }

  PublicRecordView record = *found->view;
  bool touched = false;
  for (auto [name, out] : {std::pair{"country", &record.country},
                           {"dateOfBirth", &record.dateOfBirth}, {"test", &record.test}}) {
    if (!arg.contains(name)) continue;
    if (!arg[name].is_string()) {
      return Error{Err::invalid_argument, std::string("field ") + name + " must be a string"};
    }
    *out = arg[name].get<std::string>();
    touched = true;
  }

  auto delta = private_delta_from_transient(view, key, transient);
  if (!delta.ok()) return delta.error();
  if (!touched && !delta->has_value()) {
    return Error{Err::invalid_argument, "update changes nothing"};
  }

  proposal.write_set.push_back(WriteItem{key, record.encode()});
  if (delta->has_value()) append_private_write(proposal, std::move(**delta));
  proposal.response = {{"id", *id}};
  return proposal;
}

Result<Proposal> do_delete(const ChaincodeView& view, const nlohmann::json& arg) {
  Proposal proposal;
  auto id = required_id(arg);
  if (!id.ok()) return id.error();
  std::string key = record_key(*id);

  auto found = fetch(view, proposal, key);
  if (!found.ok()) return found.error();
  if (!found->view || found->view->deleted) {
    return Error{Err::not_found, "record " + *id + " does not exist"};
  }

  // The public slot keeps a tombstone; the collection plaintext is purged
  // on every member peer while the salted anchor stays on chain.
  PublicRecordView tombstone;
  tombstone.id = *id;
  tombstone.deleted = true;
  proposal.write_set.push_back(WriteItem{key, tombstone.encode()});
  if (view.state->get_anchor(view.collection.name, key) != nullptr) {
    PrivateDelta delta;
    delta.collection = view.collection.name;
    delta.key = key;
    delta.op = PrivateOp::purge;
    append_private_write(proposal, std::move(delta));
  }
  proposal.response = {{"id", *id}, {"deleted", true}};
  return proposal;
}

}  // namespace

Result<Proposal> execute(const CallerContext& ctx, const ChaincodeView& view,
                         const ledger::Invocation& invocation, const TransientMap& transient) {
  if (view.state == nullptr) return Error{Err::internal, "chaincode needs world state"};
  auto arg = parse_single_arg(invocation);
  if (!arg.ok()) return arg.error();

  if (invocation.function == "create") return do_create(view, *arg, transient);
  if (invocation.function == "read") return do_read(view, *arg);
  if (invocation.function == "read-private") return do_read_private(ctx, view, *arg);
  if (invocation.function == "update") return do_update(view, *arg, transient);
  if (invocation.function == "delete") return do_delete(view, *arg);
  return Error{Err::invalid_argument, "unknown function " + invocation.function};
}

}  // namespace ehrl::chaincode
