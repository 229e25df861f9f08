#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace brp {

enum class ErrorKind {
  NonHyperbolic,
  NearSingular,
  Ambiguous,
  EmptyInterval,
  ContinuationStall,
  OutOfRange,
  LeftRegion,
  FixedPointDiverged,
  NoConnection,
  BlowUp,
  NewtonDiverged,
  DataTooLarge,
  CFLViolation,
  DomainEscape,
  WindowMismatch,
  PoorFit,
  Unsupported,
  InvalidArgument,
  ParseError,
  ValidationError,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace brp
