#pragma once

#include <stdexcept>
#include <string>

namespace esing {

/// Raised when an input violates the precondition of an operation.
/// The CLI reports these with exit code 2; anything else is an internal error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace esing
