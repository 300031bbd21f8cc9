#pragma once

#include <stdexcept>
#include <string>

namespace qcp {

// Bad inputs (dimension mismatches, out-of-domain parameters, malformed
// configs). CLI maps this to exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical certificate or internal consistency check failed beyond its
// tolerance. CLI maps this to exit code 2.
class VerificationError : public std::runtime_error {
 public:
  explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qcp
