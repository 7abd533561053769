#include "indsem/error.hpp"

namespace indsem {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::Io: return "IoError";
    case ErrorKind::NonGroundParameter: return "NonGroundParameter";
    case ErrorKind::NonGroundNegation: return "NonGroundNegation";
    case ErrorKind::NonGroundHead: return "NonGroundHead";
    case ErrorKind::UncallableLiteral: return "UncallableLiteral";
    case ErrorKind::NegativeQuery: return "NegativeQuery";
    case ErrorKind::NegativeGoal: return "NegativeGoal";
    case ErrorKind::NotAllowable: return "NotAllowable";
    case ErrorKind::Unstratifiable: return "Unstratifiable";
    case ErrorKind::CompositionPrecondition: return "CompositionPrecondition";
    case ErrorKind::CompositionMismatch: return "CompositionMismatch";
    case ErrorKind::NegationInObjectProgram: return "NegationInObjectProgram";
    case ErrorKind::FunctorCollision: return "FunctorCollision";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::UniverseTooLarge: return "UniverseTooLarge";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
  }
  return "Error";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Syntax:
    case ErrorKind::Io:
    case ErrorKind::NonGroundParameter:
      return 2;
    case ErrorKind::ResourceLimit:
    case ErrorKind::UniverseTooLarge:
      return 3;
    default:
      return 1;
  }
}

}  // namespace indsem
