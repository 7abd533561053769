#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace indsem {

enum class ErrorKind {
  Syntax,
  Io,
  NonGroundParameter,
  NonGroundNegation,
  NonGroundHead,
  UncallableLiteral,
  NegativeQuery,
  NegativeGoal,
  NotAllowable,
  Unstratifiable,
  CompositionPrecondition,
  CompositionMismatch,
  NegationInObjectProgram,
  FunctorCollision,
  Unsupported,
  UniverseTooLarge,
  ResourceLimit,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Exit status used by the command line front end for each error class.
int exit_code(ErrorKind kind);

}  // namespace indsem
