#pragma once

#include <stdexcept>
#include <string>

namespace mtv {

// Malformed input that could not be decoded at all (bad JSON, bad flag syntax).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A well-formed description of a system that violates its structural invariants.
class InvalidSystem : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An internal cross-check disagreed. Always a defect in this library.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The requested computation is not available for this kind of system.
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FactoredFormRequired : public CapabilityError {
 public:
  using CapabilityError::CapabilityError;
};

}  // namespace mtv
