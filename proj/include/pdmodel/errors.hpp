#pragma once

#include <stdexcept>
#include <string>

namespace pdmodel {

// Base for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied something outside an operation's contract (shape, degree, field mismatch).
class ContractError : public Error {
 public:
  using Error::Error;
};

// The input algebra does not satisfy the hypotheses required by the construction.
class HypothesisError : public Error {
 public:
  using Error::Error;
};

// A postcondition that must hold by construction failed. Indicates a bug or corrupted data.
class InternalError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace pdmodel
