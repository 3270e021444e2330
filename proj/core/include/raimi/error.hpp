#pragma once

#include <stdexcept>
#include <string>

namespace raimi {

/// Malformed or out-of-contract user input (bad rational, non-covering
/// cover, parameter below threshold). The CLI maps this to exit code 2.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An inequality that the construction guarantees did not hold. This is
/// never a user error; `dump()` carries whatever trace was built so far.
class InvariantViolation : public std::logic_error {
 public:
  explicit InvariantViolation(const std::string& what, std::string dump = {})
      : std::logic_error(what), dump_(std::move(dump)) {}

  const std::string& dump() const noexcept { return dump_; }

 private:
  std::string dump_;
};

}  // namespace raimi
