#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ssc {

// Error taxonomy mirrored by the CLI exit codes:
//   1 usage, 2 data/invariant/contract, 3 capacity.

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent data: bad instance files, violated invariants.
class InvariantError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke a documented precondition.
class ContractError : public InvariantError {
 public:
  using InvariantError::InvariantError;
};

// Input outside the supported domain (non-prime p, foreign instance, ...).
class DomainError : public InvariantError {
 public:
  using InvariantError::InvariantError;
};

// Work would exceed an enumeration/state budget.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rejection sampling hit its trial cap without producing a sample.
class RejectionFailure : public std::runtime_error {
 public:
  RejectionFailure(const std::string& what, std::uint64_t trials)
      : std::runtime_error(what), trials_(trials) {}
  std::uint64_t trials() const { return trials_; }

 private:
  std::uint64_t trials_;
};

}  // namespace ssc
