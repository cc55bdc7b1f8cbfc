// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#pragma once

namespace ehrl::suite {

// The cryptographic suite, named in one place so test vectors are
// regenerable and the primitives are swappable.
//
//   digest     - the single 256-bit hash used for block hashing, tx ids,
//                private-data anchors and Fiat-Shamir challenges
//   group      - prime-order group for commitments and credential proofs
//                (hash-to-group uses the group's native 64-byte map)
//   signature  - membership certificates and endorsements
//   aead       - baseline store column encryption

inline constexpr const char* kDigest = "SHA-256";
inline constexpr const char* kGroup = "ristretto255";
inline constexpr const char* kSignature = "Ed25519";
inline constexpr const char* kAead = "XSalsa20-Poly1305";

// Domain separation tags for every Fiat-Shamir / derivation context.
inline constexpr const char* kTagPresentation = "ehrledger/v1/presentation";
inline constexpr const char* kTagCredentialSig = "ehrledger/v1/credential-sig";
inline constexpr const char* kTagAttribute = "ehrledger/v1/attribute";
inline constexpr const char* kTagAttributeBase = "ehrledger/v1/attribute-base";
inline constexpr const char* kTagBlindingBase = "ehrledger/v1/blinding-base";
inline constexpr const char* kTagRngFork = "ehrledger/v1/rng-fork";

}  // namespace ehrl::suite
