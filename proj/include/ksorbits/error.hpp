#pragma once

#include <stdexcept>
#include <string>

namespace ksorbits {

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: malformed clan string, wrong rank, invalid ordering, ...
class UsageError : public Error {
 public:
  using Error::Error;
};

// Input is well formed but outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Requested family or feature is deliberately unsupported.
class NotImplementedError : public Error {
 public:
  using Error::Error;
};

// A self-check failed. Indicates a bug, never bad input.
class InternalError : public Error {
 public:
  using Error::Error;
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw InternalError(what);
}

}  // namespace ksorbits
