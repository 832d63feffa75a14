#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace zkpol {

enum class ErrorCode {
  DivisionByZero,
  InvalidParameters,
  InvalidEncoding,
  EmptyInput,
  InvalidLevel,
  FieldTooSmall,
  MissingInput,
  InternalInconsistency,
  UnsatisfiedWitness,
  KeyMismatch,
  MalformedProof,
  ArityMismatch,
  OpenFailed,
  DuplicateRecord,
  NothingToMine,
  TamperedRequest,
  OutOfRange,
  TamperedResponse,
  AlreadyServed,
  UnknownDigest,
  InvalidProof,
  ParseError,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace zkpol
