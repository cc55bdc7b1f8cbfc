// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "core/bytes.hpp"
#include "core/digest.hpp"
#include "core/errors.hpp"
#include "core/group.hpp"
#include "core/rng.hpp"

namespace ehrl::identity {

// CL-style anonymous credentials over a single prime-order group
// (ristretto255):
//
//   - a credential is a Pedersen commitment C = r*h0 + sum(m_i * h_i) to
//     hashed attribute scalars, bound to the issuer by a Schnorr signature
//     on C under the issuer verification element X,
//   - a presentation re-randomizes the commitment (C' = C + t*h0) and
//     proves knowledge of an opening consistent with the revealed
//     attribute strings, non-interactive via Fiat-Shamir and bound to a
//     verifier nonce.
//
// Presentations carry no signature material, so issuer binding is checked
// at the credential (verify_credential), not per presentation; binding a
// randomized showing to the issuer signature needs machinery (pairings or
// RSA-group signatures) deliberately out of scope here. What presentations
// do provide, and what the tests pin down: selective disclosure,
// unlinkability of every randomized field, and nonce freshness.

/// Public part of an issuer key: one commitment base per attribute, a
/// blinding base, and the issuer verification element.
struct IssuerPublic {
  std::uint32_t attribute_count = 0;
  group::Point verification;             // X = x*B
  group::Point blinding_base;            // h0
  std::vector<group::Point> attribute_bases;  // h1..hL

  Bytes to_bytes() const;
  static std::optional<IssuerPublic> from_bytes(ByteSpan data);
  nlohmann::json to_json() const;
  static std::optional<IssuerPublic> from_json(const nlohmann::json& j);
  bool operator==(const IssuerPublic& other) const = default;
};

struct IssuerKey {
  group::Scalar secret;
  IssuerPublic pub;
};

/// Fresh issuer key for credentials with exactly attribute_count attributes.
Result<IssuerKey> issuer_setup(std::uint32_t attribute_count, RandomSource& rng);

/// Deterministic attribute-string -> scalar mapping.
group::Scalar attribute_to_scalar(std::string_view value);

/// Schnorr signature (R, s) on the attribute commitment under the issuer
/// secret: s*B = R + H(X, C, R)*X.
struct CredentialSignature {
  group::Point commitment_point;  // R
  group::Scalar response;         // s
  bool operator==(const CredentialSignature& other) const = default;
};

struct AnonCredential {
  std::vector<std::string> attribute_values;  // holder's plaintext copy
  std::vector<group::Scalar> attributes;      // hashed scalars, same order
  group::Point commitment;                    // C
  group::Scalar blinding;                     // r
  CredentialSignature issuer_signature;
  IssuerPublic issuer;

  Bytes to_bytes() const;
  static std::optional<AnonCredential> from_bytes(ByteSpan data);
  nlohmann::json to_json() const;
  static std::optional<AnonCredential> from_json(const nlohmann::json& j);
};

Result<AnonCredential> issue_credential(const IssuerKey& issuer,
                                        const std::vector<std::string>& attributes,
                                        RandomSource& rng);

/// Commitment reconstruction plus issuer signature check.
bool verify_credential(const AnonCredential& cred, const IssuerPublic& issuer_public);

/// Unlinkable selective showing of a credential.
struct Presentation {
  group::Point randomized_commitment;          // C' = C + t*h0
  std::map<std::uint32_t, std::string> revealed;
  group::Scalar challenge;
  std::vector<group::Scalar> responses;        // [s_blind, s_i for hidden i asc]
  Digest32 nonce_binding;                      // H(verifier nonce)

  Bytes to_bytes() const;
  static std::optional<Presentation> from_bytes(ByteSpan data);
  nlohmann::json to_json() const;
  static std::optional<Presentation> from_json(const nlohmann::json& j);
  bool operator==(const Presentation& other) const = default;
};

Result<Presentation> present(const AnonCredential& cred,
                             const std::set<std::uint32_t>& reveal,
                             ByteSpan nonce,
                             RandomSource& rng);

/// Returns the revealed attribute map iff the proof verifies and the nonce
/// matches the presentation's binding.
Result<std::map<std::uint32_t, std::string>> verify_presentation(
    const Presentation& pres, const IssuerPublic& issuer_public, ByteSpan nonce);

}  // namespace ehrl::identity
