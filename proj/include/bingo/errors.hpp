#pragma once

#include <stdexcept>
#include <string>

namespace bingo {

/// Bad input: invalid card spec, out-of-range argument, malformed pattern.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// The instance is well-formed but too large for the requested exact method.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bingo
