#pragma once

#include <stdexcept>

namespace cohmap {

// Invalid parameters, malformed configs, contract violations. CLI exit code 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Missing or unreadable files, malformed on-disk data. CLI exit code 2.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cohmap
