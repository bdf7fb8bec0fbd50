#pragma once

#include <stdexcept>
#include <string>

namespace dioph {

// Base of every error thrown by the library. The CLI maps the concrete
// subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the domain an operation (or table) covers.
class RangeError : public Error {
 public:
  using Error::Error;
};

// A configured cap (memory, enumeration size, fixed-point width) would be
// exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// A documented precondition relating several arguments does not hold.
class ContractError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent user configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace dioph
