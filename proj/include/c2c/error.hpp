#pragma once

#include <stdexcept>
#include <string>

namespace c2c {

// Error families map one-to-one onto the CLI exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Header or file layout does not match the documented schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Unknown user, item, or other id lookup failure.
class LookupError : public Error {
 public:
  using Error::Error;
};

// Invalid tunables (fusion coefficients, damping, fold count, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace c2c
