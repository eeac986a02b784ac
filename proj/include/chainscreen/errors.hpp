#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace chainscreen {

enum class ErrorKind {
  InvalidInput,
  InfeasiblePromise,
  IllegalReport,
  InfeasibleGrid,
  BudgetExceeded,
  StructureViolation,
  InvalidProjection,
  NotACandidate,
  InvalidExpansion,
  NotDominant,
  NotAnExpansion,
  InvalidConfig,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; callers dispatch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace chainscreen
