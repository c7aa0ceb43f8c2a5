#include "divcdcr/error.hpp"

namespace divcdcr {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::OutOfBounds: return "OutOfBounds";
    case ErrorKind::ConflictingUri: return "ConflictingUri";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::DuplicateId: return "DuplicateId";
    case ErrorKind::BadEnum: return "BadEnum";
    case ErrorKind::GrammarError: return "GrammarError";
    case ErrorKind::DanglingRelationPointer: return "DanglingRelationPointer";
    case ErrorKind::OffsetMismatch: return "OffsetMismatch";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::AmbiguousGrouping: return "AmbiguousGrouping";
    case ErrorKind::UnknownReferent: return "UnknownReferent";
    case ErrorKind::NetworkError: return "NetworkError";
    case ErrorKind::ServiceError: return "ServiceError";
    case ErrorKind::OfflineMiss: return "OfflineMiss";
    case ErrorKind::Precondition: return "Precondition";
    case ErrorKind::TextMismatch: return "TextMismatch";
    case ErrorKind::EmptyAlignment: return "EmptyAlignment";
    case ErrorKind::IoError: return "IoError";
  }
  return "Error";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
      kind_(kind),
      detail_(detail) {}

}  // namespace divcdcr
