// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#include "identity/anoncred.hpp"

#include <algorithm>
#include <charconv>

#include <nlohmann/json.hpp>

#include "core/suite.hpp"

namespace ehrl::identity {

namespace {

using group::Point;
using group::Scalar;

constexpr std::uint32_t kMaxAttributes = 1024;

Scalar nonzero_scalar(RandomSource& rng) {
  for (;;) {
    Scalar s = Scalar::random(rng);
    if (!s.is_zero()) return s;
  }
}

Point derive_blinding_base(const Point& verification) {
  Encoder enc;
  enc.str(suite::kTagBlindingBase);
  enc.raw(verification.bytes());
  return Point::hash_to_group(enc.view());
}

Point derive_attribute_base(const Point& verification, std::uint32_t index) {
  Encoder enc;
  enc.str(suite::kTagAttributeBase);
  enc.raw(verification.bytes());
  enc.u32(index);
  return Point::hash_to_group(enc.view());
}

/// C = blinding*h0 + sum(attributes[i]*h_i). Checked arithmetic so malformed
/// inputs surface as nullopt instead of aborting.
std::optional<Point> commit(const IssuerPublic& pub, const std::vector<Scalar>& attributes,
                            const Scalar& blinding) {
  if (attributes.size() != pub.attribute_bases.size()) return std::nullopt;
  auto acc = pub.blinding_base.mul_checked(blinding);
  if (!acc) return std::nullopt;
  for (std::size_t i = 0; i < attributes.size(); ++i) {
    auto term = pub.attribute_bases[i].mul_checked(attributes[i]);
    if (!term) return std::nullopt;
    acc = acc->add(*term);
  }
  return acc;
}

Scalar signature_challenge(const IssuerPublic& pub, const Point& commitment,
                           const Point& commitment_point) {
  Encoder enc;
  enc.str(suite::kTagCredentialSig);
  enc.raw(pub.verification.bytes());
  enc.raw(commitment.bytes());
  enc.raw(commitment_point.bytes());
  return Scalar::from_hash(enc.view());
}

Scalar presentation_challenge(const IssuerPublic& pub, const Point& randomized_commitment,
                              const std::map<std::uint32_t, std::string>& revealed,
                              const Digest32& nonce_binding, const Point& announcement) {
  Encoder enc;
  enc.str(suite::kTagPresentation);
  enc.bytes(pub.to_bytes());
  enc.raw(randomized_commitment.bytes());
  enc.u32(static_cast<std::uint32_t>(revealed.size()));
  for (const auto& [index, value] : revealed) {
    enc.u32(index);
    enc.str(value);
  }
  enc.raw(nonce_binding);
  enc.raw(announcement.bytes());
  return Scalar::from_hash(enc.view());
}

bool read_point(Decoder& dec, Point& out) {
  std::array<std::uint8_t, Point::kSize> buf{};
  if (!dec.raw(buf)) return false;
  auto p = Point::from_bytes(buf);
  if (!p) return false;
  out = *p;
  return true;
}

bool read_scalar(Decoder& dec, Scalar& out) {
  std::array<std::uint8_t, Scalar::kSize> buf{};
  if (!dec.raw(buf)) return false;
  auto s = Scalar::from_bytes(buf);
  if (!s) return false;
  out = *s;
  return true;
}

std::optional<Point> point_from_json(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) return std::nullopt;
  auto raw = from_hex(j[key].get<std::string>());
  if (!raw) return std::nullopt;
  return Point::from_bytes(*raw);
}

std::optional<Scalar> scalar_from_json(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) return std::nullopt;
  auto raw = from_hex(j[key].get<std::string>());
  if (!raw) return std::nullopt;
  return Scalar::from_bytes(*raw);
}

}  // namespace

Bytes IssuerPublic::to_bytes() const {
  Encoder enc;
  enc.u32(attribute_count);
  enc.raw(verification.bytes());
  enc.raw(blinding_base.bytes());
  for (const auto& base : attribute_bases) enc.raw(base.bytes());
  return enc.take();
}

std::optional<IssuerPublic> IssuerPublic::from_bytes(ByteSpan data) {
  Decoder dec(data);
  IssuerPublic pub;
  if (!dec.u32(pub.attribute_count)) return std::nullopt;
  if (pub.attribute_count == 0 || pub.attribute_count > kMaxAttributes) return std::nullopt;
  if (!read_point(dec, pub.verification)) return std::nullopt;
  if (!read_point(dec, pub.blinding_base)) return std::nullopt;
  pub.attribute_bases.resize(pub.attribute_count);
  for (auto& base : pub.attribute_bases) {
    if (!read_point(dec, base)) return std::nullopt;
  }
  if (!dec.done()) return std::nullopt;
  return pub;
}

nlohmann::json IssuerPublic::to_json() const {
  nlohmann::json bases = nlohmann::json::array();
  for (const auto& base : attribute_bases) bases.push_back(base.hex());
  return {{"attributeCount", attribute_count},
          {"verification", verification.hex()},
          {"blindingBase", blinding_base.hex()},
          {"attributeBases", std::move(bases)}};
}

std::optional<IssuerPublic> IssuerPublic::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("attributeCount") ||
      !j["attributeCount"].is_number_unsigned() || !j.contains("attributeBases") ||
      !j["attributeBases"].is_array()) {
    return std::nullopt;
  }
  IssuerPublic pub;
  pub.attribute_count = j["attributeCount"].get<std::uint32_t>();
  if (pub.attribute_count == 0 || pub.attribute_count > kMaxAttributes) return std::nullopt;
  if (j["attributeBases"].size() != pub.attribute_count) return std::nullopt;
  auto verification = point_from_json(j, "verification");
  auto blinding_base = point_from_json(j, "blindingBase");
  if (!verification || !blinding_base) return std::nullopt;
  pub.verification = *verification;
  pub.blinding_base = *blinding_base;
  for (const auto& item : j["attributeBases"]) {
    if (!item.is_string()) return std::nullopt;
    auto raw = from_hex(item.get<std::string>());
    if (!raw) return std::nullopt;
    auto p = Point::from_bytes(*raw);
    if (!p) return std::nullopt;
    pub.attribute_bases.push_back(*p);
  }
  return pub;
}

Result<IssuerKey> issuer_setup(std::uint32_t attribute_count, RandomSource& rng) {
  if (attribute_count == 0 || attribute_count > kMaxAttributes) {
    return Error{Err::invalid_argument, "attribute count must be in [1, 1024]"};
  }
  IssuerKey key;
  key.secret = nonzero_scalar(rng);
  key.pub.attribute_count = attribute_count;
  key.pub.verification = Point::base_mul(key.secret);
  key.pub.blinding_base = derive_blinding_base(key.pub.verification);
  key.pub.attribute_bases.reserve(attribute_count);
  for (std::uint32_t i = 0; i < attribute_count; ++i) {
    key.pub.attribute_bases.push_back(derive_attribute_base(key.pub.verification, i));
  }
  return key;
}

group::Scalar attribute_to_scalar(std::string_view value) {
  Encoder enc;
  enc.str(suite::kTagAttribute);
  enc.str(value);
  return Scalar::from_hash(enc.view());
}

Result<AnonCredential> issue_credential(const IssuerKey& issuer,
                                        const std::vector<std::string>& attributes,
                                        RandomSource& rng) {
  if (attributes.size() != issuer.pub.attribute_count) {
    return Error{Err::invalid_argument, "attribute list does not match issuer key size"};
  }
  AnonCredential cred;
  cred.issuer = issuer.pub;
  cred.attribute_values = attributes;
  cred.attributes.reserve(attributes.size());
  for (const auto& value : attributes) cred.attributes.push_back(attribute_to_scalar(value));
  cred.blinding = nonzero_scalar(rng);
  auto commitment = commit(issuer.pub, cred.attributes, cred.blinding);
  if (!commitment) return Error{Err::internal, "commitment arithmetic failed"};
  cred.commitment = *commitment;

  Scalar k = nonzero_scalar(rng);
  cred.issuer_signature.commitment_point = Point::base_mul(k);
  Scalar c = signature_challenge(issuer.pub, cred.commitment,
                                 cred.issuer_signature.commitment_point);
  cred.issuer_signature.response = k.add(c.mul(issuer.secret));
  return cred;
}

bool verify_credential(const AnonCredential& cred, const IssuerPublic& issuer_public) {
  if (cred.issuer != issuer_public) return false;
  if (cred.attribute_values.size() != issuer_public.attribute_count ||
      cred.attributes.size() != issuer_public.attribute_count) {
    return false;
  }
  for (std::size_t i = 0; i < cred.attributes.size(); ++i) {
    if (!(attribute_to_scalar(cred.attribute_values[i]) == cred.attributes[i])) return false;
  }
  auto expected = commit(issuer_public, cred.attributes, cred.blinding);
  if (!expected || !(*expected == cred.commitment)) return false;

  const auto& sig = cred.issuer_signature;
  if (sig.response.is_zero()) return false;
  Scalar c = signature_challenge(issuer_public, cred.commitment, sig.commitment_point);
  auto shifted = issuer_public.verification.mul_checked(c);
  if (!shifted) return false;
  return Point::base_mul(sig.response) == sig.commitment_point.add(*shifted);
}

Result<Presentation> present(const AnonCredential& cred, const std::set<std::uint32_t>& reveal,
                             ByteSpan nonce, RandomSource& rng) {
  const auto count = cred.issuer.attribute_count;
  if (cred.attributes.size() != count || cred.attribute_values.size() != count) {
    return Error{Err::invalid_argument, "credential attribute lists are inconsistent"};
  }
  if (nonce.empty()) return Error{Err::invalid_argument, "verifier nonce must be nonempty"};
  for (auto index : reveal) {
    if (index >= count) return Error{Err::invalid_argument, "reveal index out of range"};
  }

  Presentation pres;
  Scalar t = nonzero_scalar(rng);
  pres.randomized_commitment = cred.commitment.add(cred.issuer.blinding_base.mul(t));
  Scalar randomized_blinding = cred.blinding.add(t);
  for (auto index : reveal) pres.revealed.emplace(index, cred.attribute_values[index]);
  pres.nonce_binding = sha256(nonce);

  std::vector<std::uint32_t> hidden;
  for (std::uint32_t i = 0; i < count; ++i) {
    if (!reveal.contains(i)) hidden.push_back(i);
  }

  Scalar blinding_nonce = nonzero_scalar(rng);
  Point announcement = cred.issuer.blinding_base.mul(blinding_nonce);
  std::vector<Scalar> hidden_nonces;
  hidden_nonces.reserve(hidden.size());
  for (auto index : hidden) {
    Scalar u = nonzero_scalar(rng);
    announcement = announcement.add(cred.issuer.attribute_bases[index].mul(u));
    hidden_nonces.push_back(u);
  }

  pres.challenge = presentation_challenge(cred.issuer, pres.randomized_commitment, pres.revealed,
                                          pres.nonce_binding, announcement);
  pres.responses.reserve(1 + hidden.size());
  pres.responses.push_back(blinding_nonce.add(pres.challenge.mul(randomized_blinding)));
  for (std::size_t i = 0; i < hidden.size(); ++i) {
    pres.responses.push_back(
        hidden_nonces[i].add(pres.challenge.mul(cred.attributes[hidden[i]])));
  }
  return pres;
}

Result<std::map<std::uint32_t, std::string>> verify_presentation(
    const Presentation& pres, const IssuerPublic& issuer_public, ByteSpan nonce) {
  const auto count = issuer_public.attribute_count;
  if (issuer_public.attribute_bases.size() != count) {
    return Error{Err::malformed, "issuer key is inconsistent"};
  }
  if (pres.revealed.size() > count) return Error{Err::malformed, "too many revealed attributes"};
  for (const auto& [index, value] : pres.revealed) {
    (void)value;
    if (index >= count) return Error{Err::malformed, "revealed index out of range"};
  }
  const std::size_t hidden_count = count - pres.revealed.size();
  if (pres.responses.size() != hidden_count + 1) {
    return Error{Err::malformed, "response count does not match hidden attribute count"};
  }
  if (sha256(nonce) != pres.nonce_binding) {
    return Error{Err::nonce_mismatch, "presentation is bound to a different nonce"};
  }

  Error invalid{Err::proof_invalid, "presentation proof does not verify"};
  Point reduced = pres.randomized_commitment;
  for (const auto& [index, value] : pres.revealed) {
    auto term = issuer_public.attribute_bases[index].mul_checked(attribute_to_scalar(value));
    if (!term) return invalid;
    reduced = reduced.sub(*term);
  }

  auto accumulated = issuer_public.blinding_base.mul_checked(pres.responses[0]);
  if (!accumulated) return invalid;
  std::size_t response_index = 1;
  for (std::uint32_t i = 0; i < count; ++i) {
    if (pres.revealed.contains(i)) continue;
    auto term = issuer_public.attribute_bases[i].mul_checked(pres.responses[response_index++]);
    if (!term) return invalid;
    accumulated = accumulated->add(*term);
  }
  auto shifted = reduced.mul_checked(pres.challenge);
  if (!shifted) return invalid;
  Point announcement = accumulated->sub(*shifted);

  Scalar expected = presentation_challenge(issuer_public, pres.randomized_commitment,
                                           pres.revealed, pres.nonce_binding, announcement);
  if (!(expected == pres.challenge)) return invalid;
  return pres.revealed;
}

Bytes AnonCredential::to_bytes() const {
  Encoder enc;
  enc.bytes(issuer.to_bytes());
  enc.u32(static_cast<std::uint32_t>(attribute_values.size()));
  for (const auto& value : attribute_values) enc.str(value);
  enc.u32(static_cast<std::uint32_t>(attributes.size()));
  for (const auto& scalar : attributes) enc.raw(scalar.bytes());
  enc.raw(commitment.bytes());
  enc.raw(blinding.bytes());
  enc.raw(issuer_signature.commitment_point.bytes());
  enc.raw(issuer_signature.response.bytes());
  return enc.take();
}

std::optional<AnonCredential> AnonCredential::from_bytes(ByteSpan data) {
  Decoder dec(data);
  AnonCredential cred;
  Bytes issuer_raw;
  if (!dec.bytes(issuer_raw)) return std::nullopt;
  auto issuer = IssuerPublic::from_bytes(issuer_raw);
  if (!issuer) return std::nullopt;
  cred.issuer = std::move(*issuer);

  std::uint32_t value_count = 0;
  if (!dec.u32(value_count) || value_count != cred.issuer.attribute_count) return std::nullopt;
  cred.attribute_values.resize(value_count);
  for (auto& value : cred.attribute_values) {
    if (!dec.str(value)) return std::nullopt;
  }
  std::uint32_t scalar_count = 0;
  if (!dec.u32(scalar_count) || scalar_count != value_count) return std::nullopt;
  cred.attributes.resize(scalar_count);
  for (auto& scalar : cred.attributes) {
    if (!read_scalar(dec, scalar)) return std::nullopt;
  }
  if (!read_point(dec, cred.commitment)) return std::nullopt;
  if (!read_scalar(dec, cred.blinding)) return std::nullopt;
  if (!read_point(dec, cred.issuer_signature.commitment_point)) return std::nullopt;
  if (!read_scalar(dec, cred.issuer_signature.response)) return std::nullopt;
  if (!dec.done()) return std::nullopt;
  return cred;
}

nlohmann::json AnonCredential::to_json() const {
  nlohmann::json scalars = nlohmann::json::array();
  for (const auto& scalar : attributes) scalars.push_back(scalar.hex());
  return {{"issuer", issuer.to_json()},
          {"attributeValues", attribute_values},
          {"attributes", std::move(scalars)},
          {"commitment", commitment.hex()},
          {"blinding", blinding.hex()},
          {"signature",
           {{"commitmentPoint", issuer_signature.commitment_point.hex()},
            {"response", issuer_signature.response.hex()}}}};
}

std::optional<AnonCredential> AnonCredential::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("issuer") || !j.contains("attributeValues") ||
      !j["attributeValues"].is_array() || !j.contains("attributes") ||
      !j["attributes"].is_array() || !j.contains("signature") || !j["signature"].is_object()) {
    return std::nullopt;
  }
  AnonCredential cred;
  auto issuer = IssuerPublic::from_json(j["issuer"]);
  if (!issuer) return std::nullopt;
  cred.issuer = std::move(*issuer);
  if (j["attributeValues"].size() != cred.issuer.attribute_count ||
      j["attributes"].size() != cred.issuer.attribute_count) {
    return std::nullopt;
  }
  for (const auto& item : j["attributeValues"]) {
    if (!item.is_string()) return std::nullopt;
    cred.attribute_values.push_back(item.get<std::string>());
  }
  for (const auto& item : j["attributes"]) {
    if (!item.is_string()) return std::nullopt;
    auto raw = from_hex(item.get<std::string>());
    if (!raw) return std::nullopt;
    auto scalar = Scalar::from_bytes(*raw);
    if (!scalar) return std::nullopt;
    cred.attributes.push_back(*scalar);
  }
  auto commitment = point_from_json(j, "commitment");
  auto blinding = scalar_from_json(j, "blinding");
  auto commitment_point = point_from_json(j["signature"], "commitmentPoint");
  auto response = scalar_from_json(j["signature"], "response");
  if (!commitment || !blinding || !commitment_point || !response) return std::nullopt;
  cred.commitment = *commitment;
  cred.blinding = *blinding;
  cred.issuer_signature.commitment_point = *commitment_point;
  cred.issuer_signature.response = *response;
  return cred;
}

Bytes Presentation::to_bytes() const {
  Encoder enc;
  enc.raw(randomized_commitment.bytes());
  enc.u32(static_cast<std::uint32_t>(revealed.size()));
  for (const auto& [index, value] : revealed) {
    enc.u32(index);
    enc.str(value);
  }
  enc.raw(challenge.bytes());
  enc.u32(static_cast<std::uint32_t>(responses.size()));
  for (const auto& response : responses) enc.raw(response.bytes());
  enc.raw(nonce_binding);
  return enc.take();
}

std::optional<Presentation> Presentation::from_bytes(ByteSpan data) {
  Decoder dec(data);
  Presentation pres;
  if (!read_point(dec, pres.randomized_commitment)) return std::nullopt;
  std::uint32_t revealed_count = 0;
  if (!dec.u32(revealed_count) || revealed_count > kMaxAttributes) return std::nullopt;
  std::optional<std::uint32_t> previous;
  for (std::uint32_t i = 0; i < revealed_count; ++i) {
    std::uint32_t index = 0;
    std::string value;
    if (!dec.u32(index) || !dec.str(value)) return std::nullopt;
    // Strictly ascending indices keep the encoding canonical.
    if (previous && index <= *previous) return std::nullopt;
    previous = index;
    pres.revealed.emplace(index, std::move(value));
  }
  if (!read_scalar(dec, pres.challenge)) return std::nullopt;
  std::uint32_t response_count = 0;
  if (!dec.u32(response_count) || response_count > kMaxAttributes + 1) return std::nullopt;
  pres.responses.resize(response_count);
  for (auto& response : pres.responses) {
    if (!read_scalar(dec, response)) return std::nullopt;
  }
  if (!dec.raw(pres.nonce_binding)) return std::nullopt;
  if (!dec.done()) return std::nullopt;
  return pres;
}

nlohmann::json Presentation::to_json() const {
  nlohmann::json revealed_json = nlohmann::json::object();
  for (const auto& [index, value] : revealed) revealed_json[std::to_string(index)] = value;
  nlohmann::json response_json = nlohmann::json::array();
  for (const auto& response : responses) response_json.push_back(response.hex());
  return {{"randomizedCommitment", randomized_commitment.hex()},
          {"revealed", std::move(revealed_json)},
          {"challenge", challenge.hex()},
          {"responses", std::move(response_json)},
          {"nonceBinding", to_hex(nonce_binding)}};
}

std::optional<Presentation> Presentation::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("revealed") || !j["revealed"].is_object() ||
      !j.contains("responses") || !j["responses"].is_array() || !j.contains("nonceBinding") ||
      !j["nonceBinding"].is_string()) {
    return std::nullopt;
  }
  Presentation pres;
  auto commitment = point_from_json(j, "randomizedCommitment");
  auto challenge = scalar_from_json(j, "challenge");
  if (!commitment || !challenge) return std::nullopt;
  pres.randomized_commitment = *commitment;
  pres.challenge = *challenge;
  for (const auto& [key, value] : j["revealed"].items()) {
    if (!value.is_string()) return std::nullopt;
    std::uint32_t index = 0;
    auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), index);
    if (ec != std::errc{} || ptr != key.data() + key.size()) return std::nullopt;
    if (!pres.revealed.emplace(index, value.get<std::string>()).second) return std::nullopt;
  }
  for (const auto& item : j["responses"]) {
    if (!item.is_string()) return std::nullopt;
    auto raw = from_hex(item.get<std::string>());
    if (!raw) return std::nullopt;
    auto scalar = Scalar::from_bytes(*raw);
    if (!scalar) return std::nullopt;
    pres.responses.push_back(*scalar);
  }
  auto binding = from_hex(j["nonceBinding"].get<std::string>());
  if (!binding || binding->size() != pres.nonce_binding.size()) return std::nullopt;
  std::copy(binding->begin(), binding->end(), pres.nonce_binding.begin());
  return pres;
}

}  // namespace ehrl::identity
