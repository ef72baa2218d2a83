#pragma once

#include <stdexcept>
#include <string>

namespace tropatt {

// Violated operation contract: dimension mismatch, all-bottom row,
// out-of-range parameter, value outside the carrier.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input: text or JSON that does not match the documented schemas.
class SchemaError : public std::runtime_error {
 public:
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tropatt
