#pragma once

#include <stdexcept>
#include <string>

namespace dhecke {

/// Malformed user input: bad spec files, bad parameter literals, bad flags.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Group enumeration exceeded the configured element cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An invariant the library guarantees was violated. Always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace dhecke
