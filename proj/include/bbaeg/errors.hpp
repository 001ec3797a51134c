// Copyright 2026 The BBAEG Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace bbaeg {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input text is empty or whitespace-only.
class EmptyInputError : public Error {
 public:
  using Error::Error;
};

/// Token span indices are out of range or malformed.
class SpanError : public Error {
 public:
  using Error::Error;
};

/// A document contains no token eligible for importance ranking.
class NoRankableTokensError : public Error {
 public:
  using Error::Error;
};

/// A selection operation received an empty candidate set.
class NoCandidatesError : public Error {
 public:
  using Error::Error;
};

/// A numeric value falls outside the supported conversion range.
class UnsupportedNumeralError : public Error {
 public:
  using Error::Error;
};

/// A dataset file violates its schema. Carries the 1-based row number
/// when the problem is attributable to a specific row (0 otherwise).
class FormatError : public Error {
 public:
  explicit FormatError(const std::string& message, int row = 0)
      : Error(row > 0 ? message + " (row " + std::to_string(row) + ")" : message), row_(row) {}
  int row() const { return row_; }

 private:
  int row_;
};

/// A remote backend could not be reached or answered with a transport-level
/// failure.
class BackendUnavailableError : public Error {
 public:
  using Error::Error;
};

/// A backend answered, but the payload violates the wire contract.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration or command-line usage.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Raised internally when the next victim batch would exceed the query
/// budget; the attack engine converts it into a budget_exhausted result.
class BudgetExhaustedError : public Error {
 public:
  using Error::Error;
};

}  // namespace bbaeg
