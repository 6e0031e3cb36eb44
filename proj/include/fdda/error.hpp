// Copyright 2026 The fdda Authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef FDDA_ERROR_HPP
#define FDDA_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fdda {

/// Base of every error the library throws.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid topology or scenario (e.g. a disconnected graph).
class ConfigError : public Error {
public:
  using Error::Error;
};

/// A node or address that is not part of the topology.
class LookupError : public Error {
public:
  using Error::Error;
};

/// Malformed wire text.
class DecodeError : public Error {
public:
  using Error::Error;
};

/// A message or vote that the protocol can never legitimately produce.
class ProtocolViolation : public Error {
public:
  using Error::Error;
};

/// A data-structure invariant was broken (e.g. duplicate FCF entry).
class InvariantViolation : public Error {
public:
  using Error::Error;
};

/// Scenario or report text that failed to parse; carries the 1-based line.
class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string &what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

} // namespace fdda

#endif // FDDA_ERROR_HPP
