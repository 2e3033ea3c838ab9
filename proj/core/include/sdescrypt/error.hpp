#pragma once

#include <stdexcept>
#include <string>

namespace sdescrypt {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A static table (permutation, S-box) is inconsistent with its input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Caller-supplied values violate a documented precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A corpus contained no letters from which statistics can be built.
class EmptyCorpusError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace sdescrypt
