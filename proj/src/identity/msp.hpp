// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "core/bytes.hpp"
#include "core/errors.hpp"
#include "core/rng.hpp"

namespace ehrl::identity {

using PublicKey = std::array<std::uint8_t, 32>;
using Signature = std::array<std::uint8_t, 64>;

/// Ed25519 keypair. The secret follows libsodium's expanded layout.
struct SigningKey {
  std::array<std::uint8_t, 64> secret{};
  PublicKey public_key{};

  static SigningKey generate(RandomSource& rng);
  Signature sign(ByteSpan message) const;
};

bool verify_signature(const PublicKey& key, ByteSpan message, const Signature& sig);

enum class Role : std::uint8_t { client = 0, peer = 1, orderer = 2, admin = 3 };

const char* role_name(Role role);
std::optional<Role> role_from_name(std::string_view name);

/// Signed membership tuple issued by an organization CA. Abstract
/// certificate: the CA signature covers exactly the canonical tuple below.
struct StandardIdentity {
  std::string subject;
  std::string org_name;
  Role role = Role::client;
  PublicKey public_key{};
  Signature ca_signature{};

  /// Canonical (subject, org_name, role, public_key) bytes the CA signs.
  Bytes signed_tuple() const;

  Bytes to_bytes() const;
  static std::optional<StandardIdentity> from_bytes(ByteSpan data);
  nlohmann::json to_json() const;
  static std::optional<StandardIdentity> from_json(const nlohmann::json& j);

  bool operator==(const StandardIdentity& other) const = default;
};

/// Identity plus the signing key the member holds. The key never appears
/// in the identity's serialized form.
struct Enrollment {
  StandardIdentity identity;
  SigningKey key;
};

/// Per-organization membership service provider: issues and validates the
/// standard signature-based identities of peers, orderers and clients.
class OrgCA {
 public:
  static Result<OrgCA> create(std::string org_name, RandomSource& rng);

  Result<Enrollment> enroll(std::string subject, Role role, RandomSource& rng) const;

  const std::string& org_name() const { return org_name_; }
  const PublicKey& public_key() const { return key_.public_key; }
  const SigningKey& key() const { return key_; }

 private:
  OrgCA(std::string org_name, SigningKey key)
      : org_name_(std::move(org_name)), key_(key) {}

  std::string org_name_;
  SigningKey key_;
};

/// True iff ca_signature is a valid signature over the identity tuple
/// under ca_public. Malformed input yields false, never an error.
bool verify_member(const StandardIdentity& id, const PublicKey& ca_public);

/// Org name -> CA public key, as distributed to every peer.
struct Msp {
  std::map<std::string, PublicKey> org_ca_keys;

  const PublicKey* find(const std::string& org) const;
};

}  // namespace ehrl::identity
