#pragma once

#include <stdexcept>
#include <string>

namespace ucactus {

enum class ErrorKind {
  NotConnected,
  SharedCycleEdge,
  NonPositiveEdgeLength,
  InvalidGraph,
  InvalidPoint,
  InvalidInstance,
  EmptyActiveSet,
  EdgeInCycle,
  UncoverableSet,
  InstanceNotVertexConstrained,
  UnliftablePoint,
  TooLargeForOracle,
  ParseError,
  ValidationError,
  InfeasibleParams,
  InternalInvariant,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotConnected: return "NotConnected";
    case ErrorKind::SharedCycleEdge: return "SharedCycleEdge";
    case ErrorKind::NonPositiveEdgeLength: return "NonPositiveEdgeLength";
    case ErrorKind::InvalidGraph: return "InvalidGraph";
    case ErrorKind::InvalidPoint: return "InvalidPoint";
    case ErrorKind::InvalidInstance: return "InvalidInstance";
    case ErrorKind::EmptyActiveSet: return "EmptyActiveSet";
    case ErrorKind::EdgeInCycle: return "EdgeInCycle";
    case ErrorKind::UncoverableSet: return "UncoverableSet";
    case ErrorKind::InstanceNotVertexConstrained: return "InstanceNotVertexConstrained";
    case ErrorKind::UnliftablePoint: return "UnliftablePoint";
    case ErrorKind::TooLargeForOracle: return "TooLargeForOracle";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::InfeasibleParams: return "InfeasibleParams";
    case ErrorKind::InternalInvariant: return "InternalInvariant";
  }
  return "Unknown";
}

// Every failure raised by the library carries a kind so callers (and the CLI
// exit-code mapping) can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ucactus
