#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace divcdcr {

enum class ErrorKind {
  OutOfBounds,
  ConflictingUri,
  SyntaxError,
  SchemaError,
  DuplicateId,
  BadEnum,
  GrammarError,
  DanglingRelationPointer,
  OffsetMismatch,
  ConfigError,
  AmbiguousGrouping,
  UnknownReferent,
  NetworkError,
  ServiceError,
  OfflineMiss,
  Precondition,
  TextMismatch,
  EmptyAlignment,
  IoError,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library. what() is "<Kind>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace divcdcr
