#pragma once

#include <stdexcept>
#include <string>

namespace spot {

/// Error thrown by all toolkit operations on contract violations,
/// malformed files, and failed external runs.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spot
