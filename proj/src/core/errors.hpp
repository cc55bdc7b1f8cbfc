// Copyright (c) the ehrledger authors. All rights reserved.
// Licensed under the Apache 2.0 License.

#pragma once

#include <string>
#include <utility>
#include <variant>

namespace ehrl {

enum class Err {
  none = 0,
  invalid_argument,
  not_found,
  duplicate,
  access_denied,
  purged,
  auth_failed,
  proof_invalid,
  nonce_mismatch,
  malformed,
  conflict,
  io,
  internal,
};

const char* err_name(Err code);

struct Error {
  Err code = Err::none;
  std::string message;
};

/// Value-or-error return type used throughout the core. Deliberately tiny:
/// just enough of the expected<> idiom for this codebase.
template <typename T>
class Result {
 public:
  Result(T value) : data_(std::move(value)) {}
  Result(Error error) : data_(std::move(error)) {}
  Result(Err code, std::string message) : data_(Error{code, std::move(message)}) {}

  bool ok() const { return std::holds_alternative<T>(data_); }
  explicit operator bool() const { return ok(); }

  T& value() & { return std::get<T>(data_); }
  const T& value() const& { return std::get<T>(data_); }
  T&& value() && { return std::get<T>(std::move(data_)); }

  const Error& error() const { return std::get<Error>(data_); }
  Err code() const { return ok() ? Err::none : error().code; }

  T* operator->() { return &value(); }
  const T* operator->() const { return &value(); }
  T& operator*() & { return value(); }
  const T& operator*() const& { return value(); }

 private:
  std::variant<T, Error> data_;
};

template <>
class Result<void> {
 public:
  Result() = default;
  Result(Error error) : error_(std::move(error)) {}
  Result(Err code, std::string message) : error_(Error{code, std::move(message)}) {}

  bool ok() const { return error_.code == Err::none; }
  explicit operator bool() const { return ok(); }
  const Error& error() const { return error_; }
  Err code() const { return error_.code; }

 private:
  Error error_;
};

}  // namespace ehrl
