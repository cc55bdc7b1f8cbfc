// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#include "identity/msp.hpp"

#include <sodium.h>

#include <nlohmann/json.hpp>

#include "core/digest.hpp"

namespace ehrl::identity {

SigningKey SigningKey::generate(RandomSource& rng) {
  ensure_crypto_init();
  std::array<std::uint8_t, crypto_sign_SEEDBYTES> seed;
  rng.fill(seed);
  SigningKey key;
  crypto_sign_seed_keypair(key.public_key.data(), key.secret.data(), seed.data());
  return key;
}

Signature SigningKey::sign(ByteSpan message) const {
  Signature sig;
  crypto_sign_detached(sig.data(), nullptr, message.data(), message.size(), secret.data());
  return sig;
}

bool verify_signature(const PublicKey& key, ByteSpan message, const Signature& sig) {
  ensure_crypto_init();
  return crypto_sign_verify_detached(sig.data(), message.data(), message.size(), key.data()) == 0;
}

const char* role_name(Role role) {
  switch (role) {
    case Role::client: return "client";
    case Role::peer: return "peer";
    case Role::orderer: return "orderer";
    case Role::admin: return "admin";
  }
  return "unknown";
}

std::optional<Role> role_from_name(std::string_view name) {
  if (name == "client") return Role::client;
  if (name == "peer") return Role::peer;
  if (name == "orderer") return Role::orderer;
  if (name == "admin") return Role::admin;
  return std::nullopt;
}

Bytes StandardIdentity::signed_tuple() const {
  Encoder enc;
  enc.str(subject);
  enc.str(org_name);
  enc.u8(static_cast<std::uint8_t>(role));
  enc.raw(public_key);
  return enc.take();
}

Bytes StandardIdentity::to_bytes() const {
  Encoder enc;
  enc.str(subject);
  enc.str(org_name);
  enc.u8(static_cast<std::uint8_t>(role));
  enc.raw(public_key);
  enc.raw(ca_signature);
  return enc.take();
}

std::optional<StandardIdentity> StandardIdentity::from_bytes(ByteSpan data) {
  Decoder dec(data);
  StandardIdentity id;
  std::uint8_t role_byte = 0;
  if (!dec.str(id.subject) || !dec.str(id.org_name) || !dec.u8(role_byte) ||
      !dec.raw(id.public_key) || !dec.raw(id.ca_signature) || !dec.done()) {
    return std::nullopt;
  }
  if (role_byte > static_cast<std::uint8_t>(Role::admin)) return std::nullopt;
  id.role = static_cast<Role>(role_byte);
  return id;
}

nlohmann::json StandardIdentity::to_json() const {
  return {
      {"subject", subject},
      {"org", org_name},
      {"role", role_name(role)},
      {"publicKey", to_hex(public_key)},
      {"caSignature", to_hex(ca_signature)},
  };
}

std::optional<StandardIdentity> StandardIdentity::from_json(const nlohmann::json& j) {
  if (!j.is_object()) return std::nullopt;
  StandardIdentity id;
  try {
    id.subject = j.at("subject").get<std::string>();
    id.org_name = j.at("org").get<std::string>();
    auto role = role_from_name(j.at("role").get<std::string>());
    if (!role) return std::nullopt;
    id.role = *role;
    auto pk = from_hex(j.at("publicKey").get<std::string>());
    auto sig = from_hex(j.at("caSignature").get<std::string>());
    if (!pk || pk->size() != id.public_key.size()) return std::nullopt;
    if (!sig || sig->size() != id.ca_signature.size()) return std::nullopt;
    std::copy(pk->begin(), pk->end(), id.public_key.begin());
    std::copy(sig->begin(), sig->end(), id.ca_signature.begin());
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;
  }
  return id;
}

Result<OrgCA> OrgCA::create(std::string org_name, RandomSource& rng) {
  if (org_name.empty()) {
    return Error{Err::invalid_argument, "organization name must be non-empty"};
  }
  return OrgCA(std::move(org_name), SigningKey::generate(rng));
}

Result<Enrollment> OrgCA::enroll(std::string subject, Role role, RandomSource& rng) const {
  if (subject.empty()) {
    return Error{Err::invalid_argument, "subject must be non-empty"};
  }
  Enrollment e;
  e.key = SigningKey::generate(rng);
  e.identity.subject = std::move(subject);
  e.identity.org_name = org_name_;
  e.identity.role = role;
  e.identity.public_key = e.key.public_key;
  e.identity.ca_signature = key_.sign(e.identity.signed_tuple());
  return e;
}

bool verify_member(const StandardIdentity& id, const PublicKey& ca_public) {
  return verify_signature(ca_public, id.signed_tuple(), id.ca_signature);
}

const PublicKey* Msp::find(const std::string& org) const {
  auto it = org_ca_keys.find(org);
  return it == org_ca_keys.end() ? nullptr : &it->second;
}

}  // namespace ehrl::identity
