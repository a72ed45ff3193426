#pragma once

#include <stdexcept>
#include <string>

namespace pebthresh {

// Argument outside the mathematical domain of an operation (bad n, t, b, index...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A family or level would exceed the configured materialization cap.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// A search ran out of its configured state budget. Never a wrong answer.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Illegal pebbling step.
class MoveError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace pebthresh
