// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#include "core/errors.hpp"

namespace ehrl {

const char* err_name(Err code) {
  switch (code) {
    case Err::none: return "none";
    case Err::invalid_argument: return "invalid-argument";
    case Err::not_found: return "not-found";
    case Err::duplicate: return "duplicate";
    case Err::access_denied: return "access-denied";
    case Err::purged: return "purged";
    case Err::auth_failed: return "auth-failed";
    case Err::proof_invalid: return "proof-invalid";
    case Err::nonce_mismatch: return "nonce-mismatch";
    case Err::malformed: return "malformed";
    case Err::conflict: return "conflict";
    case Err::io: return "io";
    case Err::internal: return "internal";
  }
  return "unknown";
}

}  // namespace ehrl
