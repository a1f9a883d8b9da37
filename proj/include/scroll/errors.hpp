#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace scroll {

// Caller broke a precondition (mixed fields, wrong ambient space, ...).
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Input is outside the mathematical domain of the operation.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// A structural extraction step rejected a point set that does not have the
// required geometry. `step` names the stage that failed so violation
// reports stay legible.
class ReconstructionError : public std::runtime_error {
 public:
  ReconstructionError(std::string step, const std::string& detail)
      : std::runtime_error(step + ": " + detail), step_(std::move(step)) {}

  const std::string& step() const { return step_; }

 private:
  std::string step_;
};

}  // namespace scroll
